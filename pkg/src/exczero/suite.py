"""The acceptance checks as library functions, each returning a small report
usable by the CLI and by CI.  Every randomized check takes an explicit seed."""

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import (
    Quasicharacter, all_primitive_characters, character_from_log,
    euler_factor, gauss_sum, trivial_character,
)
from .curves import EllipticCurve, ap, l_invariant
from .cyclotomic import CValue
from .detident import det_fixedpointfree_expansion
from .localdist import mellin_mu_alpha, mellin_target
from .measures import (
    check_distribution_and_bound, dirac, gamma_transform, vanishing_order,
)
from .padic import from_rational, log_iwasawa, unit_root
from .pipeline import exceptional_zero_report, mtt_measure, total_mass_report
from .steinberg import EllSpec, coboundary_check, z_ell
from .tree import TreeEdge, ball_vertices, neighbors
from .treerep import (
    EdgeFunction, VertexFunction, delta, delta_star, hecke_T, rho_times,
    tilde_delta_down, tilde_delta_up,
)

__all__ = ["CriterionResult", "run_suite", "ALL_CRITERIA"]

E11 = EllipticCurve("11a1", 11, 0, -1, 1, -10, -20)


@dataclass
class CriterionResult:
    name: str
    ok: bool
    elapsed: float
    details: dict = field(default_factory=dict)

    def machine_line(self):
        status = "PASS" if self.ok else "FAIL"
        kv = " ".join(f"{k}={v}" for k, v in self.details.items())
        return f"{status} criterion={self.name} elapsed={self.elapsed:.2f} {kv}".rstrip()


def _timed(name, fn):
    t0 = time.time()
    ok, details = fn()
    return CriterionResult(name, ok, time.time() - t0, details)


# -- 1: tree operator identities ----------------------------------------------

def _random_vertex_function(rng, p, radius):
    verts = sorted(ball_vertices(p, radius), key=repr)
    phi = VertexFunction(p)
    for v in rng.sample(verts, min(4, len(verts))):
        phi = phi + VertexFunction.indicator(v, Fraction(rng.randint(-5, 5)))
    return phi


def _random_edge_function(rng, p, sign, radius):
    verts = sorted(ball_vertices(p, radius), key=repr)
    c = EdgeFunction(p, sign)
    for _ in range(4):
        v = rng.choice(verts)
        c.add_to(TreeEdge(v, rng.choice(neighbors(v))),
                 Fraction(rng.randint(-5, 5)))
    return c


def criterion_tree_identities(seed=0, quick=False):
    primes = (2, 3) if quick else (2, 3, 5)
    radius = 2 if quick else 3
    per = 9 if quick else 28
    rng = random.Random(seed)

    def run():
        instances = failures = 0
        for p in primes:
            q = p
            for eps in (1, -1):
                for _ in range(per):
                    phi = _random_vertex_function(rng, p, radius)
                    lhs = delta(delta_star(phi, eps))
                    rhs = phi.scale(q + 1) - hecke_T(phi).scale(eps)
                    instances += 1
                    failures += lhs != rhs
                    c = _random_edge_function(rng, p, eps, radius)
                    instances += 1
                    failures += delta(c).pairing(phi) != c.pairing(
                        delta_star(phi, eps))
                    if not phi.is_zero():
                        instances += 1
                        failures += delta_star(phi, eps).is_zero()
            for alpha in (Fraction(1), Fraction(-1), Fraction(2)):
                for _ in range(per):
                    phi = _random_vertex_function(rng, p, radius)
                    lhs = tilde_delta_down(alpha, tilde_delta_up(alpha, phi))
                    rho2 = rho_times(alpha, rho_times(alpha, phi))
                    rhs = rho2.scale(alpha ** 2 + Fraction(q) / alpha ** 2) \
                        - rho_times(alpha, hecke_T(rho_times(alpha, phi)))
                    instances += 1
                    failures += lhs != rhs
        return failures == 0, {"instances": instances, "failures": failures}

    return _timed("tree_identities", run)


# -- 2: closed form vs truncated shell sum ------------------------------------

def criterion_mellin_closed_form(seed=0, tol=1e-8, quick=False):
    from .characters import mellin_closed_form
    rng = random.Random(seed)
    per_p = 10 if quick else 50

    def run():
        worst = 0.0
        count = 0
        for p in (3, 5, 7):
            pool = (all_primitive_characters(p, 1)
                    + all_primitive_characters(p, 2)
                    + [trivial_character(p)])
            for _ in range(per_p):
                base = rng.choice(pool)
                t = Fraction(rng.randint(1, 2 * p - 2), 2)  # 0 < |t| < p
                if rng.random() < 0.5:
                    t = -t
                chi = Quasicharacter(base.p, t, base.f, base.unit_table)
                target = mellin_closed_form(chi).to_complex()
                r = abs(float(t)) / p
                n_max = 40
                while r ** (n_max + 1) / (1 - r) > tol / 10:
                    n_max += 20
                got = mellin_mu_alpha(chi, 1, n_max=n_max, exact=False)
                err = abs(got.value.to_complex() - target)
                assert got.tail_bound < tol
                worst = max(worst, err)
                count += 1
        return worst < tol, {"chars": count, "worst_err": f"{worst:.2e}"}

    return _timed("mellin_closed_form", run)


# -- 3: interpolation against the Euler factor --------------------------------

def criterion_interpolation(tol=1e-8, quick=False):
    def run():
        worst = 0.0
        checked = 0
        exceptional_exact = True
        for p in ((3,) if quick else (3, 5)):
            chars = [trivial_character(p)] + all_primitive_characters(p, 1)
            for alpha in (1, -1, float(p) ** 0.5):
                for chi in chars:
                    target = mellin_target(chi, alpha)
                    got = mellin_mu_alpha(chi, alpha, n_max=140, exact=False)
                    err = abs(got.value.to_complex() - target.to_complex())
                    worst = max(worst, err + got.tail_bound)
                    checked += 1
                    if alpha == 1 and chi.f == 0:
                        # the exceptional zero: the Euler factor vanishes
                        exceptional_exact &= (
                            euler_factor(1, chi) == CValue.exact(0)
                            and target == CValue.exact(0))
        ok = worst < tol and exceptional_exact
        return ok, {"checked": checked, "worst_err": f"{worst:.2e}",
                    "exceptional_exact": exceptional_exact}

    return _timed("interpolation", run)


# -- 4: Gauss sum identities ---------------------------------------------------

def criterion_gauss_identities(tol=1e-9, quick=False):
    def run():
        exact_ok = True
        worst = 0.0
        count = 0
        for p in ((3, 5) if quick else (3, 5, 7, 11)):
            for k in range(1, p - 1):
                chi = character_from_log(p, 1, k)
                chi_inv = character_from_log(p, 1, p - 1 - k)
                prod = gauss_sum(chi) * gauss_sum(chi_inv)
                exact_ok &= prod == chi.value_at_unit(p - 1) * p
                tau = gauss_sum(chi, exact=False).to_complex()
                worst = max(worst, abs(abs(tau) ** 2 - p))
                count += 1
        return exact_ok and worst < tol, {
            "chars": count, "exact_ok": exact_ok, "worst_abs2": f"{worst:.2e}"}

    return _timed("gauss_identities", run)


# -- 5: Steinberg cocycle and coboundary ---------------------------------------

def _sweep_points(p):
    pts = []
    for k in range(-3, 4):
        for u in (1, 2, p + 1):
            pts.append(Fraction(u) * Fraction(p) ** k)
    return pts


def _nonzero(rng, p):
    while True:
        x = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        if x != 0:
            return x


def criterion_steinberg(seed=0, quick=False):
    rng = random.Random(seed)
    n_cob = 50 if quick else 200
    n_coc = 25 if quick else 100

    def run():
        failures = 0
        for kind, p in (("ord", 3), ("log", 5)):
            ell = EllSpec(kind, p)
            for _ in range(n_cob):
                a, x = _nonzero(rng, p), _nonzero(rng, p)
                lhs, rhs = coboundary_check(a, x, ell)
                failures += lhs != rhs
            pts = _sweep_points(p)
            for _ in range(n_coc):
                a, b = _nonzero(rng, p), _nonzero(rng, p)
                zab = z_ell(a * b, ell)
                za = z_ell(a, ell)
                zb_a = z_ell(b, ell).act(a)
                for x in pts:
                    failures += zab.evaluate(x) != za.evaluate(x) + \
                        zb_a.evaluate(x)
        return failures == 0, {"failures": failures,
                               "coboundary_trials": 2 * n_cob,
                               "cocycle_pairs": 2 * n_coc}

    return _timed("steinberg", run)


# -- 6: zero-row-sum determinant identity --------------------------------------

def criterion_determinant(seed=0, quick=False):
    rng = random.Random(seed)
    trials = 200 if quick else 1000

    def run():
        failures = 0
        for _ in range(trials):
            k = rng.randint(1, 4)
            m = rng.randint(k, 5)
            rows = []
            for _ in range(k):
                row = [rng.randint(-9, 9) for _ in range(m - 1)]
                row.append(-sum(row))
                rows.append(row)
            lhs, rhs = det_fixedpointfree_expansion(rows)
            failures += lhs != rhs
        return failures == 0, {"trials": trials, "failures": failures}

    return _timed("determinant", run)


# -- 7: measure engine ----------------------------------------------------------

def criterion_measure_engine(seed=0, quick=False):
    rng = random.Random(seed)
    n_synth = 5 if quick else 20

    def run():
        failures = 0
        for _ in range(n_synth):
            p = rng.choice([3, 5, 7])
            mu = dirac(p, 4, 1).scale(0)
            for _ in range(rng.randint(1, 4)):
                u = rng.choice([1, 2, 1 + p, 1 + 2 * p, p - 1])
                w = Fraction(rng.randint(-4, 4), p ** rng.randint(0, 2))
                mu = mu + dirac(p, 4, u).scale(w)
            rep = check_distribution_and_bound(mu)
            failures += not rep.ok
            s = from_rational(p, p, 16)
            v3, e3 = gamma_transform(mu, s, 3)
            v4, _ = gamma_transform(mu, s, 4)
            failures += not (v3 - v4).truncate_abs(e3).is_zero
        return failures == 0, {"synthetic": n_synth, "failures": failures}

    return _timed("measure_engine", run)


# -- 8: good ordinary interpolation (control) ----------------------------------

def criterion_good_interpolation(quick=False):
    level = 3 if quick else 4

    def run():
        rep = total_mass_report(E11, 3, level, prec=level)
        alpha_inv = unit_root(ap(E11, 3), 3, level).inverse()
        pred = (1 - alpha_inv) ** 2
        diff = from_rational(rep.ratio, 3, level + 1) - pred
        ok = rep.ok and diff.truncate_abs(level).is_zero
        return ok, {"curve": "11a1", "p": 3, "level": level,
                    "ratio_mod": int(from_rational(rep.ratio, 3, level)
                                     .residue_mod(level)),
                    "predicted_mod": int(pred.residue_mod(level))}

    return _timed("good_interpolation", run)


# -- 9: the exceptional zero ------------------------------------------------------

def criterion_exceptional_zero(quick=False):
    level = 3 if quick else 4

    def run():
        rep = exceptional_zero_report(E11, 11, level, prec=12)
        mu = mtt_measure(E11, 11, level)
        c = check_distribution_and_bound(mu).bound_cert
        lp0_ok = rep.total_mass == 0  # hence 0 mod 11^(level - c)
        diff = (rep.moment1_ratio - rep.l_inv).truncate_abs(min(3, level - c))
        ok = rep.ok and lp0_ok and diff.is_zero
        return ok, {"curve": "11a1", "p": 11, "level": level, "c": c,
                    "lp0": str(rep.total_mass),
                    "moment1_ratio": str(rep.moment1_ratio),
                    "l_invariant": str(rep.l_inv.truncate_abs(level + 1))}

    return _timed("exceptional_zero", run)


# -- 10: vanishing order ----------------------------------------------------------

def criterion_vanishing_order(quick=False):
    level = 2 if quick else 3

    def run():
        ok = True
        E15 = EllipticCurve("15a1", 15, 1, 1, 1, -10, -10)
        for E, p in ((E11, 11), (E15, 5)):
            mu = mtt_measure(E, p, level)
            order, _ = vanishing_order(mu, 2, level)
            ok &= order >= 1
        p = 5
        mu = dirac(p, 4, 1 + p) + dirac(p, 4, 1).scale(-1)
        order, moments = vanishing_order(mu, 2, 4)
        m1 = moments[1]
        target = log_iwasawa(Fraction(1 + p), p, 18).truncate_abs(m1.abs_prec)
        ok &= order == 1 and m1 == target
        return ok, {"synthetic_order": order, "split_curves": 2}

    return _timed("vanishing_order", run)


ALL_CRITERIA = [
    ("tree_identities", criterion_tree_identities),
    ("mellin_closed_form", criterion_mellin_closed_form),
    ("interpolation", criterion_interpolation),
    ("gauss_identities", criterion_gauss_identities),
    ("steinberg", criterion_steinberg),
    ("determinant", criterion_determinant),
    ("measure_engine", criterion_measure_engine),
    ("good_interpolation", criterion_good_interpolation),
    ("exceptional_zero", criterion_exceptional_zero),
    ("vanishing_order", criterion_vanishing_order),
]


def run_suite(seed=0, quick=False):
    results = []
    for name, fn in ALL_CRITERIA:
        if fn in (criterion_tree_identities, criterion_mellin_closed_form,
                  criterion_steinberg, criterion_determinant,
                  criterion_measure_engine):
            results.append(fn(seed=seed, quick=quick))
        else:
            results.append(fn(quick=quick))
    return results
