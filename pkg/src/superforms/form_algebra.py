"""Graded algebra of integral forms.

Monomials are canonical products of generators theta_j, dgamma_i, (dpsi_j)^m
and delta^(k)(dpsi_j); coefficients are Laurent polynomials in the even
coordinates.  Transposition signs follow the Koszul rule with bidegree table

    theta: (deg 0, par 1)   dgamma: (1, 0)   dpsi: (1, 1)
    delta^(k): (deg -k, par (k+1) mod 2)

and the contraction relation dpsi_j * delta^(k)(dpsi_j) = -k * delta^(k-1)(dpsi_j)
is applied until monomials are in normal form.  The alternating delta parity
is the unique choice making the contraction rule commute with transpositions
(and hence d o d = 0): each contraction consumes one dpsi together with one
delta order, so the crossing sign of dpsi against delta^(k) cannot depend on k.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .coeff_ring import LaurentPoly, lp_add, lp_mul, lp_partial, lp_scale
from .errors import StructuralError, UnsupportedMorphismError

# Factor atom kinds.  An atom is ("th", j), ("dg", i), ("dp", j) or ("dl", j, k).
TH = "th"
DG = "dg"
DP = "dp"
DL = "dl"

_RANK = {TH: 0, DG: 1, DP: 2, DL: 3}


def theta(j):
    return (TH, j)


def dgamma(i):
    return (DG, i)


def dpsi(j):
    return (DP, j)


def delta(j, order=0):
    if order < 0:
        raise StructuralError("delta order must be non-negative, got %d" % order)
    return (DL, j, order)


def atom_key(a):
    """Canonical ordering key: thetas, dgammas, dpsis, deltas, each by index."""
    if a[0] == DL:
        return (3, a[1], a[2])
    return (_RANK[a[0]], a[1], 0)


def atom_degree(a):
    kind = a[0]
    if kind == TH:
        return 0
    if kind == DL:
        return -a[2]
    return 1


def atom_parity(a):
    # delta^(k) parity alternates with the order: d-coherence of the
    # contraction rule forces s(dpsi, delta^(k)) to be order-independent,
    # i.e. parity (-k, (k+1) mod 2); taking every delta odd breaks d o d = 0
    # on theta_1 theta_2 delta^(k)(dpsi_1) delta^(l)(dpsi_2) for k, l >= 1.
    if a[0] == DG:
        return 0
    if a[0] == DL:
        return (a[2] + 1) % 2
    return 1


def koszul_sign(a, b):
    """Sign s with a*b = s*b*a for single generator factors."""
    return -1 if (atom_degree(a) * atom_degree(b) + atom_parity(a) * atom_parity(b)) % 2 else 1


class Bidegree(NamedTuple):
    degree: int
    picture: int


@dataclass(frozen=True)
class GeneratorTable:
    """Ordered even and odd coordinate names of one chart."""

    even_names: tuple
    odd_names: tuple

    def __post_init__(self):
        object.__setattr__(self, "even_names", tuple(self.even_names))
        object.__setattr__(self, "odd_names", tuple(self.odd_names))
        names = self.even_names + self.odd_names
        if len(set(names)) != len(names):
            raise StructuralError("coordinate names must be unique: %r" % (names,))


@dataclass(frozen=True)
class Monomial:
    """Normal-form factor content of one term.

    thetas / devens: sorted index tuples (no repeats); dodds: ((j, power>0), ...);
    deltas: ((j, order>=0), ...).  dodds and deltas have disjoint index sets.
    """

    thetas: tuple = ()
    devens: tuple = ()
    dodds: tuple = ()
    deltas: tuple = ()

    def factors(self):
        out = [(TH, j) for j in self.thetas]
        out += [(DG, i) for i in self.devens]
        for j, power in self.dodds:
            out += [(DP, j)] * power
        out += [(DL, j, k) for j, k in self.deltas]
        return tuple(out)

    def degree(self):
        return (
            len(self.devens)
            + sum(p for _, p in self.dodds)
            - sum(k for _, k in self.deltas)
        )

    def picture(self):
        return len(self.deltas)

    def bidegree(self):
        return Bidegree(self.degree(), self.picture())

    def sort_key(self):
        # Listing order compares the highest-rank factors first, so that e.g.
        # delta(dpsi) precedes psi*dg*delta'(dpsi).
        return tuple(atom_key(a) for a in reversed(self.factors()))


UNIT_MONOMIAL = Monomial()


class Superform:
    """Finite map Monomial -> LaurentPoly on one chart."""

    __slots__ = ("chart", "table", "terms")

    def __init__(self, chart, table, terms=None):
        self.chart = chart
        self.table = table
        clean = {}
        for mon, lp in (terms or {}).items():
            if lp.is_zero():
                continue
            if mon in clean:
                s = lp_add(clean[mon], lp)
                if s.is_zero():
                    del clean[mon]
                else:
                    clean[mon] = s
            else:
                clean[mon] = lp
        self.terms = clean

    @classmethod
    def zero(cls, chart, table):
        return cls(chart, table)

    @classmethod
    def constant(cls, chart, table, value):
        lp = LaurentPoly.const(table.even_names, value)
        return cls(chart, table, {UNIT_MONOMIAL: lp})

    @classmethod
    def from_poly(cls, chart, table, lp):
        return cls(chart, table, {UNIT_MONOMIAL: lp})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Superform)
            and self.chart == other.chart
            and self.table == other.table
            and self.terms == other.terms
        )

    def __add__(self, other):
        _check_same_chart(self, other)
        terms = dict(self.terms)
        for mon, lp in other.terms.items():
            if mon in terms:
                s = lp_add(terms[mon], lp)
                if s.is_zero():
                    del terms[mon]
                else:
                    terms[mon] = s
            else:
                terms[mon] = lp
        out = Superform(self.chart, self.table)
        out.terms = terms
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        out = Superform(self.chart, self.table)
        out.terms = {m: lp_scale(lp, -1) for m, lp in self.terms.items()}
        return out

    def scale(self, scalar):
        scalar = Fraction(scalar)
        out = Superform(self.chart, self.table)
        if scalar:
            out.terms = {m: lp_scale(lp, scalar) for m, lp in self.terms.items()}
        return out

    def times_poly(self, lp):
        """Multiply by an even coefficient polynomial (central)."""
        out = Superform(self.chart, self.table)
        for mon, c in self.terms.items():
            p = lp_mul(c, lp)
            if not p.is_zero():
                out.terms[mon] = p
        return out

    def bidegree(self):
        """The common Bidegree of all terms, or None if inhomogeneous/zero."""
        degs = {m.bidegree() for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def homogeneous_components(self):
        return bidegree_components(self)

    def __repr__(self):
        if not self.terms:
            return "Superform(%s, 0)" % self.chart
        bits = []
        for mon in sorted(self.terms, key=Monomial.sort_key):
            bits.append("%r:%r" % (mon.factors(), self.terms[mon]))
        return "Superform(%s, %s)" % (self.chart, "; ".join(bits))


def _check_same_chart(a, b):
    if a.chart != b.chart or a.table != b.table:
        raise StructuralError("chart mismatch: %r vs %r" % (a.chart, b.chart))


def _validate_atoms(factors, table):
    n_even = len(table.even_names)
    n_odd = len(table.odd_names)
    for a in factors:
        kind = a[0]
        if kind not in _RANK:
            raise StructuralError("unknown factor atom %r" % (a,))
        idx = a[1]
        if kind == DG:
            if not 0 <= idx < n_even:
                raise StructuralError("even index %d out of range" % idx)
        else:
            if not 0 <= idx < n_odd:
                raise StructuralError("odd index %d out of range" % idx)
        if kind == DL and a[2] < 0:
            raise StructuralError("delta order must be non-negative")


def normalize(factors, coeff, chart, table):
    """Sort a raw factor sequence into normal form, collecting Koszul signs.

    Repeated odd-parity factors vanish; the contraction rule is applied until
    dpsi and delta indices are disjoint.  Returns a (possibly zero) Superform.
    """
    if isinstance(coeff, LaurentPoly):
        if coeff.variables != table.even_names:
            raise StructuralError("coefficient variables do not match the chart table")
        lp = coeff
    else:
        lp = LaurentPoly.const(table.even_names, coeff)
    if lp.is_zero():
        return Superform.zero(chart, table)

    fs = list(factors)
    _validate_atoms(fs, table)
    sign = 1
    # Insertion sort with Koszul signs (stable: equal keys never swap).
    for i in range(1, len(fs)):
        j = i
        while j > 0 and atom_key(fs[j - 1]) > atom_key(fs[j]):
            sign *= koszul_sign(fs[j - 1], fs[j])
            fs[j - 1], fs[j] = fs[j], fs[j - 1]
            j -= 1

    # Squares of odd-parity generators vanish; so do same-index double deltas.
    for t in range(1, len(fs)):
        a, b = fs[t - 1], fs[t]
        if a[0] == b[0] == TH and a[1] == b[1]:
            return Superform.zero(chart, table)
        if a[0] == b[0] == DG and a[1] == b[1]:
            return Superform.zero(chart, table)
        if a[0] == b[0] == DL and a[1] == b[1]:
            return Superform.zero(chart, table)

    # Contraction: move the rightmost dpsi_j next to delta^(k)(dpsi_j).
    scalar = Fraction(1)
    while True:
        dp_positions = {}
        for t, a in enumerate(fs):
            if a[0] == DP:
                dp_positions[a[1]] = t  # rightmost occurrence wins
        target = None
        for t, a in enumerate(fs):
            if a[0] == DL and a[1] in dp_positions:
                target = (dp_positions[a[1]], t)
                break
        if target is None:
            break
        p, q = target
        mover = fs[p]
        for crossed in fs[p + 1 : q]:
            sign *= koszul_sign(mover, crossed)
        k = fs[q][2]
        if k == 0:
            return Superform.zero(chart, table)
        scalar *= -k
        fs[q] = (DL, fs[q][1], k - 1)
        del fs[p]

    thetas = tuple(a[1] for a in fs if a[0] == TH)
    devens = tuple(a[1] for a in fs if a[0] == DG)
    dodds = {}
    for a in fs:
        if a[0] == DP:
            dodds[a[1]] = dodds.get(a[1], 0) + 1
    deltas = tuple((a[1], a[2]) for a in fs if a[0] == DL)
    mon = Monomial(thetas, devens, tuple(sorted(dodds.items())), deltas)
    return Superform(chart, table, {mon: lp_scale(lp, scalar * sign)})


def wedge(a, b):
    """Bilinear extension of monomial concatenation followed by normalize."""
    _check_same_chart(a, b)
    out = Superform.zero(a.chart, a.table)
    for ma, ca in a.terms.items():
        fa = ma.factors()
        for mb, cb in b.terms.items():
            c = lp_mul(ca, cb)
            if c.is_zero():
                continue
            out = out + normalize(fa + mb.factors(), c, a.chart, a.table)
    return out


def exterior_d(a):
    """Extended de Rham differential.

    d(f)*M expands through lp_partial; d acts on factors by the degree-graded
    Leibniz rule with d(theta_j) = dpsi_j and d(dgamma) = d(dpsi) = d(delta) = 0.
    """
    out = Superform.zero(a.chart, a.table)
    for mon, f in a.terms.items():
        factors = mon.factors()
        for i in range(len(a.table.even_names)):
            g = lp_partial(f, i)
            if not g.is_zero():
                out = out + normalize(((DG, i),) + factors, g, a.chart, a.table)
        prefix_degree = 0
        for t, atom in enumerate(factors):
            if atom[0] == TH:
                coeff = f if prefix_degree % 2 == 0 else lp_scale(f, -1)
                out = out + normalize(
                    factors[:t] + ((DP, atom[1]),) + factors[t + 1 :],
                    coeff,
                    a.chart,
                    a.table,
                )
            prefix_degree += atom_degree(atom)
    return out


def bidegree_components(a):
    """Partition the terms of a Superform by Bidegree."""
    out = {}
    for mon, lp in a.terms.items():
        bd = mon.bidegree()
        if bd not in out:
            out[bd] = Superform.zero(a.chart, a.table)
        out[bd] = out[bd] + Superform(a.chart, a.table, {mon: lp})
    return out


def delta_expand(order, argument, truncation):
    """Series expansion of delta^(order) about its invertible dpsi term.

    argument = c*dpsi_target + rest with c an invertible Laurent monomial; the
    result is sum_{m=0..truncation} (rest^m / m!) c^{-(order+m+1)}
    delta^(order+m)(dpsi_target), normalized.  Terms with nilpotent rest vanish
    automatically beyond their nilpotency order.
    """
    if order < 0:
        raise StructuralError("delta order must be non-negative")
    if truncation < 0:
        raise StructuralError("truncation must be non-negative")
    chart, table = argument.chart, argument.table

    target = None
    for mon, lp in argument.terms.items():
        if mon.thetas or mon.devens or mon.deltas:
            continue
        if len(mon.dodds) == 1 and mon.dodds[0][1] == 1 and lp.is_monomial():
            j = mon.dodds[0][0]
            if target is None or j < target[0]:
                target = (j, lp)
    if target is None:
        raise UnsupportedMorphismError(
            "delta argument has no invertible-monomial dpsi term to expand about"
        )
    j, c_lp = target
    c_exps, c_coeff = c_lp.single_term()

    dpsi_term = Superform(chart, table, {Monomial(dodds=((j, 1),)): c_lp})
    rest = argument - dpsi_term

    out = Superform.zero(chart, table)
    rest_power = Superform.constant(chart, table, 1)
    m_factorial = 1
    for m in range(truncation + 1):
        if m:
            rest_power = wedge(rest_power, rest)
            m_factorial *= m
        if rest_power.is_zero():
            break
        power = -(order + m + 1)
        c_pow = LaurentPoly.monomial(
            table.even_names, tuple(power * e for e in c_exps), c_coeff ** power
        )
        delta_part = normalize(((DL, j, order + m),), c_pow, chart, table)
        out = out + wedge(rest_power, delta_part).scale(Fraction(1, m_factorial))
    return out


def pair(a, b):
    """Pairing Omega^{n+1|0} x Omega^{-n|1} -> Omega^{1|1}: the wedge product."""
    da = a.bidegree()
    db = b.bidegree()
    if da is None or db is None:
        raise StructuralError("pairing requires homogeneous forms")
    if da.picture != 0 or db.picture != 1 or da.degree < 1 or da.degree + db.degree != 1:
        raise StructuralError(
            "pairing requires bidegrees (n+1|0) and (-n|1), got %r and %r" % (da, db)
        )
    return wedge(a, b)
