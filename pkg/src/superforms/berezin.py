"""Berezin reduction of top integral forms and the bosonic residue.

A top form on a chart with m even and n odd coordinates lives in
Omega^{m|n}: every term must carry the full dgamma block, the full
delta(dpsi) block at order zero, and no bare dpsi factors.  Reducing
integrates out all odd directions: only terms containing the complete
theta block survive, with coefficient read in the canonical factor order
theta_1 ... theta_n dgamma_1 ... dgamma_m delta(dpsi_1) ... delta(dpsi_n).
"""

from .coeff_ring import LaurentPoly, lp_add
from .errors import NotATopFormError, StructuralError


def berezin_reduce(form):
    """Integrate out the odd sector of a top form.

    Returns the Laurent polynomial in the even coordinates multiplying the
    full odd block.  Raises NotATopFormError when any term is not a top
    integral form.
    """
    table = form.table
    m = len(table.even_names)
    n = len(table.odd_names)
    full_devens = tuple(range(m))
    full_deltas = tuple((j, 0) for j in range(n))
    full_thetas = tuple(range(n))
    result = LaurentPoly.zero(table.even_names)
    for mon, lp in form.terms.items():
        if mon.devens != full_devens:
            raise NotATopFormError("missing part of the dgamma block: %r" % (mon,))
        if mon.dodds:
            raise NotATopFormError("bare dpsi factor in a top form: %r" % (mon,))
        if mon.deltas != full_deltas:
            raise NotATopFormError(
                "delta block is not the full order-zero block: %r" % (mon,)
            )
        if mon.thetas == full_thetas:
            result = lp_add(result, lp)
    return result


def bosonic_residue(poly, variable):
    """Coefficient of the exponent -1 in one even variable, other exponents
    summed only where they vanish; the residue of a Laurent polynomial."""
    if variable in poly.variables:
        idx = poly.variables.index(variable)
    else:
        raise StructuralError("unknown even coordinate %r" % variable)
    total = 0
    for exps, c in poly.items():
        if exps[idx] != -1:
            continue
        if any(e != 0 for k, e in enumerate(exps) if k != idx):
            continue
        total += c
    return total


def berezin_integral(form, variable=None):
    """Full integral of a top form over the chart: Berezin reduction followed
    by the bosonic residue in each even coordinate (or the one given)."""
    reduced = berezin_reduce(form)
    names = (variable,) if variable is not None else form.table.even_names
    total = 0
    for exps, c in reduced.items():
        ok = True
        for k, name in enumerate(reduced.variables):
            want = -1 if name in names else 0
            if exps[k] != want:
                ok = False
                break
        if ok:
            total += c
    return total
