"""Verification suites shared by the command line and the test-suite."""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from importlib import resources

from . import hahn
from .exact import CorrelatorValue, parse_poly
from .hodge import check_hodge, elsv_combination, genus0_lambda_expansion_check
from .oracles import hurwitz_weighted, lue_eigenvalue_oracle, partitions_of
from .resolvent import (as_key, connected_correlator, involution_defect, mgue_factorization_residual,
                        projector_defect, trace_defect, virasoro_residual)
from .topo import (LaurentT, Report, check_integrality, check_parity, check_symmetry,
                   check_weak_positivity, expand_in_N, expand_strict, expand_weak, hurwitz_table,
                   laurent_from_json, narayana, planar_two_point_check, weak_genus0_closed)

N, M = hahn.N, hahn.M


def load_fixture(name: str) -> dict:
    return json.loads(resources.files("luecorr").joinpath("data", name).read_text())


def keys_up_to(total: int, r_max: int | None = None):
    """All correlator keys (sorted multisets of nonzero ints) with sum |k| <= total."""
    values = [k for k in range(-total, total + 1) if k]
    out = []
    for r in range(1, (r_max or total) + 1):
        for key in itertools.combinations_with_replacement(values, r):
            if sum(abs(k) for k in key) <= total:
                out.append(key)
    return out


# suites

def suite_recursions(ell_max: int = 12) -> Report:
    rep = Report("recursions")
    for kind in ("A", "B"):
        rec = hahn.coeff_recursion(kind, ell_max)
        for ell in range(ell_max + 1):
            direct = hahn.coeff_A_sum(ell) if kind == "A" else hahn.coeff_B_sum(ell)
            rep.expect(direct == rec[ell], (kind, ell, "sum vs recursion"))
            rep.expect(hahn.coeff_integer_form(kind, ell) == rec[ell], (kind, ell, "integer form"))
    for ell in range(ell_max + 1):
        b = hahn.B(ell)
        lhs = hahn.A(ell) * (ell * (ell + 1))
        rhs = N * M * (b.subs("N", N + 1).subs("M", M + 1) - b)
        rep.expect(lhs == rhs, ("A vs B", ell))
    try:
        scaled = hahn.scaled_DEF(min(ell_max, 10))
        rep.expect(True, None)
    except ArithmeticError as exc:
        rep.expect(False, ("D/E/F routes", str(exc)))
        return rep
    for name in ("D", "E", "F"):
        for ell, p in enumerate(getattr(scaled, name)):
            rep.expect(hahn.is_odd_laurent(p), (name, ell, "not odd in N"))
    return rep


def suite_projector(ell_max: int = 10) -> Report:
    rep = Report("projector")
    for sign in ("+", "-"):
        rep.expect(not projector_defect(sign, ell_max), (sign, "R^2 != R"))
        rep.expect(not trace_defect(sign, ell_max), (sign, "tr R != 1"))
    return rep


def suite_symmetry(total: int = 8, hurwitz_size: int = 6) -> Report:
    rep = Report("symmetry")
    for key in keys_up_to(total):
        if min(key) > 0:
            rep.expect(involution_defect(key).is_zero(), (key, "involution"))
    for d in range(1, hurwitz_size + 1):
        for mu in partitions_of(d):
            rep.merge(check_symmetry(mu, (d + 1 - mu.length) // 2 + 1))
    for k in range(1, 9):
        for s in range(1, k + 1):
            rep.expect(narayana(k, s) == narayana(k, k + 1 - s), ("narayana", k, s))
    return rep


def suite_virasoro(n_max: int = 3, degree: int = 4) -> Report:
    rep = Report("virasoro")
    for n in range(n_max + 1):
        for e, val in virasoro_residual(n, degree).items():
            rep.expect(val.is_zero(), (n, e))
    return rep


def suite_parity(total: int = 6) -> Report:
    rep = Report("parity")
    for key in keys_up_to(total):
        rep.merge(check_parity(key))
    return rep


def suite_integrality(total: int = 6, positivity_size: int = 4) -> Report:
    rep = Report("integrality")
    for key in keys_up_to(total):
        rep.merge(check_integrality(key))
    for d in range(1, positivity_size + 1):
        for mu in partitions_of(d):
            rep.merge(check_weak_positivity(mu, 2))
    for k in range(1, 9):
        table = expand_strict((k,), 0)
        weak = expand_weak((k,), 0)
        for s in range(1, k + 1):
            rep.expect(table.value(0, s) == narayana(k, s), ("narayana", k, s))
            rep.expect(weak.value(0, s) == weak_genus0_closed(k, s), ("weak genus 0", k, s))
    rep.merge(planar_two_point_check(6))
    return rep


def _correlator_erratum_confirmed(key, printed: CorrelatorValue, computed: CorrelatorValue) -> bool:
    """The eigenvalue integrals agree with the computation and refute the printed value."""
    refuted = False
    for n in (1, 2, 3):
        oracle = lue_eigenvalue_oracle(key, n)
        if not oracle.equals(computed.subs("N", n)):
            return False
        if not oracle.equals(printed.subs("N", n)):
            refuted = True
    return refuted


def suite_fixtures(hurwitz=True, correlators=True, expansions=True) -> Report:
    """Every shipped table entry.  Entries flagged as known discrepancies pass only
    when the eigenvalue oracle confirms the computed correlator."""
    rep = Report("fixtures")
    rep.errata = []
    if hurwitz:
        groups = {}
        for e in load_fixture("hurwitz_tables.json")["entries"]:
            groups.setdefault((e["flavor"], tuple(e["mu"])), []).append(e)
        for (flavor, mu), entries in groups.items():
            table = hurwitz_table(flavor, mu, max(e["g"] for e in entries), max(e["s"] for e in entries))
            for e in entries:
                got = table.value(e["g"], e["s"])
                rep.expect(got == e["value"], (flavor, mu, e["g"], e["s"], e["value"], got))
    if correlators:
        for e in load_fixture("correlators.json")["entries"]:
            printed = CorrelatorValue.lift(parse_poly(e["expr"]))
            got = connected_correlator(e["key"])
            if got.same_function(printed):
                rep.expect(True, None)
            elif "known_discrepancy" in e:
                ok = _correlator_erratum_confirmed(e["key"], printed, got)
                rep.expect(ok, ("correlator", tuple(e["key"]), "erratum not confirmed"))
                rep.errata.append(("correlator", tuple(e["key"]), e["known_discrepancy"]))
            else:
                rep.expect(False, ("correlator", tuple(e["key"]), e["expr"], got.format()))
    if expansions:
        for e in load_fixture("topo_expansions.json")["entries"]:
            bad = expansion_mismatches(e)
            if not bad:
                rep.expect(True, None)
            elif "known_discrepancy" in e:
                computed = connected_correlator(e["key"])
                ok = all(lue_eigenvalue_oracle(e["key"], n).equals(computed.subs("N", n))
                         for n in (1, 2, 3))
                rep.expect(ok, ("expansion", tuple(e["key"]), "erratum not confirmed"))
                rep.errata.append(("expansion", tuple(e["key"]), e["known_discrepancy"]))
            else:
                rep.expect(False, ("expansion", tuple(e["key"]), bad[0]))
    return rep


def expansion_mismatches(entry) -> list:
    """[(N power, printed, computed)] for every power where the two differ.

    Powers above the printed leading term must vanish.  For exact entries
    nothing may remain below the printed terms either.
    """
    low = entry["lowest_N_power"]
    exact = low is None
    value = connected_correlator(entry["key"])
    want = {r["N_power"]: laurent_from_json(r["terms"]) for r in entry["coefficients"]}
    got = expand_in_N(value, min(want) if exact else low)
    bad = []
    for n in sorted(set(want) | set(got), reverse=True):
        w, g = want.get(n, LaurentT()), got.get(n, LaurentT())
        if w != g:
            bad.append((n, w, g))
    if exact:
        deeper = expand_in_N(value, min(want) - 6)
        bad.extend((n, LaurentT(), v) for n, v in deeper.items() if n < min(want))
    return bad


def suite_factorization(keys=((1,), (2,), (3,), (1, 1), (2, 1), (2, 2))) -> Report:
    rep = Report("factorization")
    for key in keys:
        rep.expect(mgue_factorization_residual(key).is_zero(), key)
    return rep


def suite_hodge(size: int = 5, g_max: int = 2) -> Report:
    rep = Report("hodge")
    for d in range(1, size + 1):
        for mu in partitions_of(d):
            rep.merge(check_hodge(mu, g_max))
            side, predicted = elsv_combination(mu, 0)
            if mu.length <= 2:
                # the moduli spaces of genus-0 curves with one or two points are unstable
                rep.expect(predicted == 0, (mu.parts, "genus-0 unstable", predicted))
            elif mu.length == 3:
                # with three points the moduli space is a point
                rep.expect(predicted == 1, (mu.parts, "genus-0 point", predicted))
    for k in range(1, 11):
        rep.merge(genus0_lambda_expansion_check(k))
    side, _ = elsv_combination((1,), 1)
    rep.expect(side == -1, ("(1)", 1, side))
    return rep


def suite_hurwitz_oracle(size: int = 5, r_max: int = 6) -> Report:
    """Brute-force weighted counts against both expansions, r = l + s + 2g - 2 <= r_max."""
    rep = Report("hurwitz oracle")
    for d in range(1, size + 1):
        for mu in partitions_of(d):
            g_top = max(0, (r_max - mu.length) // 2)
            strict = expand_strict(mu, g_top)
            weak = expand_weak(mu, g_top)
            for g in range(g_top + 1):
                for s in range(1, d + 1):
                    if mu.length + s + 2 * g - 2 > r_max:
                        continue
                    for flavor, table in (("strict", strict), ("weak", weak)):
                        want = hurwitz_weighted(mu, s, g, flavor)
                        rep.expect(Fraction(table.value(g, s)) == want,
                                   (flavor, mu.parts, g, s, want, table.value(g, s)))
    return rep


def suite_lue_oracle(total: int = 6, r_max: int = 3) -> Report:
    rep = Report("eigenvalue oracle")
    for key in keys_up_to(total, r_max):
        value = connected_correlator(key)
        for n in (1, 2, 3):
            rep.expect(lue_eigenvalue_oracle(key, n).equals(value.subs("N", n)), ("lue", key, n))
    return rep


def suite_oracles() -> Report:
    return Report("oracles").merge(suite_hurwitz_oracle()).merge(suite_lue_oracle())


SUITES = {
    "recursions": suite_recursions,
    "projector": suite_projector,
    "symmetry": suite_symmetry,
    "virasoro": suite_virasoro,
    "parity": suite_parity,
    "integrality": suite_integrality,
    "fixtures": suite_fixtures,
    "factorization": suite_factorization,
    "hodge": suite_hodge,
    "oracles": suite_oracles,
}
