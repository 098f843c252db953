"""Charts, transition morphisms and the pullback of integral forms.

A morphism is fixed by its generator images: each target even coordinate maps
to an invertible Laurent monomial in the source evens, each target odd
coordinate to a linear combination of source odds with Laurent coefficients.
Pullback extends these images to the whole form algebra: coefficients by
substitution, dgamma/dpsi by d of the images, delta factors by delta_expand.
"""

from dataclasses import dataclass, field

from .coeff_ring import LaurentPoly, lp_substitute_monomial
from .errors import StructuralError, UnsupportedMorphismError
from .form_algebra import (
    DG,
    DL,
    DP,
    TH,
    GeneratorTable,
    Monomial,
    Superform,
    delta_expand,
    exterior_d,
    normalize,
    wedge,
)


@dataclass(frozen=True)
class Chart:
    id: str
    table: GeneratorTable


class Morphism:
    """Generator-image table defining a pullback homomorphism.

    even_images: target even index -> LaurentPoly (single invertible monomial)
    over the source evens.  odd_images: target odd index -> tuple of
    (LaurentPoly coefficient, source odd index) pairs.
    """

    def __init__(self, source, target, even_images, odd_images):
        self.source = source
        self.target = target
        self.even_images = dict(even_images)
        self.odd_images = {j: tuple(v) for j, v in odd_images.items()}
        self._atom_cache = {}
        src_vars = source.table.even_names
        for i in range(len(target.table.even_names)):
            if i not in self.even_images:
                raise StructuralError("missing image for even coordinate %d" % i)
            img = self.even_images[i]
            if img.variables != src_vars:
                raise StructuralError("even image variables do not match the source chart")
            if not img.is_monomial():
                raise UnsupportedMorphismError(
                    "even image must be a single invertible Laurent monomial"
                )
        for j in range(len(target.table.odd_names)):
            if j not in self.odd_images:
                raise StructuralError("missing image for odd coordinate %d" % j)
            for c, idx in self.odd_images[j]:
                if c.variables != src_vars:
                    raise StructuralError("odd image variables do not match the source chart")
                if not 0 <= idx < len(source.table.odd_names):
                    raise StructuralError("odd image index %d out of range" % idx)

    def substitution_images(self):
        out = {}
        for i, name in enumerate(self.target.table.even_names):
            exps, c = self.even_images[i].single_term()
            out[name] = (c, exps)
        return out

    def odd_image_form(self, j):
        src = self.source
        out = Superform.zero(src.id, src.table)
        for c, idx in self.odd_images[j]:
            out = out + normalize(((TH, idx),), c, src.id, src.table)
        return out


@dataclass
class Atlas:
    """Charts plus transition morphisms indexed by (source id, target id)."""

    charts: dict
    transitions: dict = field(default_factory=dict)

    def chart(self, chart_id):
        if chart_id not in self.charts:
            raise StructuralError("unknown chart %r" % chart_id)
        return self.charts[chart_id]

    def transition(self, source_id, target_id):
        key = (source_id, target_id)
        if key not in self.transitions:
            raise StructuralError("no transition %r" % (key,))
        return self.transitions[key]


def identity_morphism(chart):
    evens = chart.table.even_names
    even_images = {
        i: LaurentPoly.monomial(evens, tuple(1 if t == i else 0 for t in range(len(evens))))
        for i in range(len(evens))
    }
    ones = LaurentPoly.const(evens, 1)
    odd_images = {j: ((ones, j),) for j in range(len(chart.table.odd_names))}
    return Morphism(chart, chart, even_images, odd_images)


def _atom_image(m, atom, series_extra):
    """Pullback of one generator factor, memoized per morphism."""
    key = (atom, series_extra)
    if key in m._atom_cache:
        return m._atom_cache[key]
    src = m.source
    kind = atom[0]
    if kind == TH:
        out = m.odd_image_form(atom[1])
    elif kind == DG:
        img = Superform.from_poly(src.id, src.table, m.even_images[atom[1]])
        out = exterior_d(img)
    elif kind == DP:
        out = exterior_d(m.odd_image_form(atom[1]))
    else:
        j, order = atom[1], atom[2]
        arg = _atom_image(m, (DP, j), series_extra)
        out = delta_expand(order, arg, order + series_extra)
    m._atom_cache[key] = out
    return out


def pullback(m, a, series_extra=None):
    """Pull a form on m.target back to m.source.

    series_extra bounds the delta series: each delta^(k) factor expands to
    truncation k + series_extra.  The default, max dpsi power in `a` plus the
    number of source odd coordinates, is exact whenever the non-leading part of
    the dpsi image is nilpotent (true for the built-in atlases).
    """
    if a.chart != m.target.id or a.table != m.target.table:
        raise StructuralError("form does not live on the morphism target chart")
    if series_extra is None:
        max_dpsi = 0
        for mon in a.terms:
            max_dpsi = max(max_dpsi, sum(p for _, p in mon.dodds))
        series_extra = max_dpsi + max(1, len(m.source.table.odd_names))
    images = m.substitution_images()
    src = m.source
    out = Superform.zero(src.id, src.table)
    for mon, f in a.terms.items():
        pulled_f = lp_substitute_monomial(f, images, src.table.even_names)
        acc = Superform.from_poly(src.id, src.table, pulled_f)
        for atom in mon.factors():
            if acc.is_zero():
                break
            acc = wedge(acc, _atom_image(m, atom, series_extra))
        out = out + acc
    return out


@dataclass
class CocycleReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures


def verify_cocycle(atlas, probes):
    """Check f_ii = id and f_ij o f_ji = id on each probe form."""
    report = CocycleReport()
    for probe in probes:
        chart_id = probe.chart
        for (src, tgt), m in atlas.transitions.items():
            if tgt != chart_id:
                continue
            if src == chart_id:
                report.checked += 1
                if pullback(m, probe) != probe:
                    report.failures.append((src, tgt, probe))
                continue
            back = atlas.transitions.get((chart_id, src))
            if back is None:
                continue
            report.checked += 1
            once = pullback(m, probe)
            twice = pullback(back, once)
            if twice != probe:
                report.failures.append((src, tgt, probe))
    return report


def builtin_p11():
    """The projective superline: two charts, transitions g -> 1/g, psi -> psi/g."""
    table = GeneratorTable(("g",), ("psi",))
    u0 = Chart("U0", table)
    u1 = Chart("U1", table)
    inv = LaurentPoly.monomial(("g",), (-1,))
    transitions = {}
    for src, tgt in ((u0, u1), (u1, u0)):
        transitions[(src.id, tgt.id)] = Morphism(
            src, tgt, {0: inv}, {0: ((inv, 0),)}
        )
    transitions[("U0", "U0")] = identity_morphism(u0)
    transitions[("U1", "U1")] = identity_morphism(u1)
    return Atlas({"U0": u0, "U1": u1}, transitions)


def builtin_flat(m, n):
    """Flat space C^{m|n}: a single chart with the identity transition."""
    if m < 0 or n < 0:
        raise StructuralError("flat space needs m, n >= 0")
    evens = ("g",) if m == 1 else tuple("g%d" % (i + 1) for i in range(m))
    odds = ("psi",) if n == 1 else tuple("psi%d" % (j + 1) for j in range(n))
    chart = Chart("U0", GeneratorTable(evens, odds))
    return Atlas({"U0": chart}, {("U0", "U0"): identity_morphism(chart)})
