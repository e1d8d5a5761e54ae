"""The acceptance battery.

Nine criteria, each a function returning a ``CriterionResult``. The CLI ``suite``
command and the acceptance test both call ``run_suite`` so they exercise the
same code with the same seeds. ``SuiteConfig.scale`` shrinks every sample count
for quick smoke runs; acceptance uses ``scale=1``.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import exact as ex
from .errors import DoesNotExist, NotDecomposable
from .families import FAMILIES, INVERTIBLE_LEFT, RECTANGULAR, SQUARE
from .inverse import (
    PENROSE_TOL,
    dmpgi,
    identity_suite,
    lemma_suite,
    ndmpi,
    ndmpi_closed_form,
    nonessential_gate,
    penrose_check,
    residual,
)
from .laws import CHECKERS, Pair, check_commutation_consequences, check_fol, check_rol_plain
from .matrix import (
    DualMatrix,
    random_complex,
    random_dual,
    random_essential,
    random_rank,
    random_unitary,
)
from .scalar import Ordering, total_cmp
from .solve import dual_norm, dual_rank_decomposition, solve_min_norm

FLOAT_EXACT_TOL = 1e-12
CLOSED_FORM_TOL = 1e-8
ORACLE_TOL = 1e-10
RUNTIME_BUDGET = 10.0


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    tol: float = PENROSE_TOL
    scale: float = 1.0
    workers: int = 1

    def n(self, full: int, floor: int = 1) -> int:
        return max(floor, int(round(full * self.scale)))


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    metrics: dict = field(default_factory=dict)
    seconds: float = 0.0

    def __post_init__(self):
        self.passed = bool(self.passed)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.name}: {self.detail}"

    def as_dict(self, timings: bool = True) -> dict:
        d = asdict(self)
        if not timings:
            d.pop("seconds")
            d["metrics"].pop("seconds", None)
        return d


# ---- corpora ----


def mixed_matrix(seed: int, i: int) -> DualMatrix:
    """Matrix ``i`` of the random corpus: every standard rank occurs, with some special shapes."""
    rng = np.random.default_rng([seed, i])
    m, n = (int(x) for x in rng.integers(1, 9, size=2))
    k = min(m, n)
    kind = i % 10
    if kind == 0:  # purely infinitesimal
        return DualMatrix(np.zeros((m, n)), random_complex(m, n, rng))
    if kind == 1:  # classical
        return DualMatrix(random_rank(m, n, int(rng.integers(0, k + 1)), rng), np.zeros((m, n)))
    if kind == 2:  # repeated standard singular values
        r = int(rng.integers(1, k + 1))
        s = np.repeat(rng.uniform(0.5, 2.0, size=(r + 1) // 2), 2)[:r]
        U, V = random_unitary(m, rng)[:, :r], random_unitary(n, rng)[:, :r]
        return DualMatrix((U * np.sort(s)[::-1]) @ V.conj().T, random_complex(m, n, rng))
    if kind == 3:
        return random_essential(m, n, int(rng.integers(0, k + 1)), rng)
    return random_dual(m, n, i % (k + 1), rng)


def rational_matrix(seed: int, i: int) -> ex.RationalDualMatrix:
    rng = np.random.default_rng([seed, 7, i])
    m, n = (int(x) for x in rng.integers(1, 5, size=2))
    return ex.random_gaussian_rational(m, n, int(rng.integers(0, min(m, n) + 1)), rng)


def _map(fn, items, workers):
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


# ---- criteria 1 and 2 ----


def criterion_penrose(cfg: SuiteConfig, rows=None) -> CriterionResult:
    count = cfg.n(500, 20)
    rows = [] if rows is None else rows
    t0 = time.perf_counter()
    for i in range(count):
        A = mixed_matrix(cfg.seed, i)
        rep = penrose_check(A, ndmpi(A), tol=cfg.tol)
        rows.append((i, A, max(rep.residuals.values())))
    elapsed = time.perf_counter() - t0
    worst = max((r for _, _, r in rows), default=0.0)
    fails = sum(r > cfg.tol for _, _, r in rows)
    budget = RUNTIME_BUDGET * cfg.scale if cfg.scale < 1 else RUNTIME_BUDGET
    ok = fails == 0 and elapsed <= budget
    return CriterionResult(
        1,
        "Penrose equations on random matrices",
        ok,
        f"{count} matrices, {fails} failures, worst residual {worst:.2e} (tol {cfg.tol:g}), "
        f"runtime {'within' if elapsed <= budget else 'OVER'} the {budget:g}s budget",
        {"count": count, "failures": fails, "worst": worst, "seconds": elapsed},
        elapsed,
    )


def criterion_dual_path(cfg: SuiteConfig, corpus=None) -> CriterionResult:
    t0 = time.perf_counter()
    if corpus is None:
        corpus = [(i, mixed_matrix(cfg.seed, i)) for i in range(cfg.n(500, 20))]
    worst_cf, cf_errors = 0.0, 0
    for _, A, *_ in corpus:
        try:
            d = residual(ndmpi_closed_form(A, tol=cfg.tol), ndmpi(A))
        except Exception:
            cf_errors += 1
            continue
        worst_cf = max(worst_cf, d)
    n_exact = cfg.n(50, 5)
    worst_ex = 0.0
    for i in range(n_exact):
        Q = rational_matrix(cfg.seed, i)
        exact = ex.exact_ndmpi(Q).to_float()
        worst_ex = max(worst_ex, (ndmpi(Q.to_float()) - exact).max_abs())
    ok = cf_errors == 0 and worst_cf <= CLOSED_FORM_TOL and worst_ex <= ORACLE_TOL
    return CriterionResult(
        2,
        "SVD path vs closed form vs exact oracle",
        ok,
        f"closed form on {len(corpus)}: worst {worst_cf:.2e} (tol {CLOSED_FORM_TOL:g}, {cf_errors} errors); "
        f"exact on {n_exact}: worst {worst_ex:.2e} (tol {ORACLE_TOL:g})",
        {"closed_form_worst": worst_cf, "closed_form_errors": cf_errors, "exact_worst": worst_ex},
        time.perf_counter() - t0,
    )


# ---- criteria 3 and 4: the worked counterexamples ----


def _q(rows_std, rows_dual):
    return ex.RationalDualMatrix(ex.qmat(rows_std), ex.qmat(rows_dual))


def rol_example():
    """Â = [1 ε], B̂ = diag(1, ε)."""
    return _q([[1, 0]], [[0, 1]]), _q([[1, 0], [0, 0]], [[0, 0], [0, 1]])


def fol_example():
    """Â = diag(1, ε), B̂ = I₂."""
    return _q([[1, 0], [0, 0]], [[0, 0], [0, 1]]), _q([[1, 0], [0, 1]], [[0, 0], [0, 0]])


def _match(float_M: DualMatrix, exact_M: ex.RationalDualMatrix) -> float:
    return (float_M - exact_M.to_float()).max_abs()


def criterion_rol_example(cfg: SuiteConfig) -> CriterionResult:
    t0 = time.perf_counter()
    A, B = rol_example()
    AN, BN, ABN = ex.exact_ndmpi(A), ex.exact_ndmpi(B), ex.exact_ndmpi(A @ B)
    target = _q([[1], [0]], [[0], [0]])
    lhs2 = B @ BN @ A.H @ A @ B
    rhs2 = A.H @ A @ B
    checks = {
        "(AB)^N = [1; 0]": ABN == target,
        "BN AN = [1; 0]": BN @ AN == target,
        "B BN A*A B = [[1,0],[0,0]]": lhs2 == _q([[1, 0], [0, 0]], [[0, 0], [0, 0]]),
        "A*A B = [[1,0],[ε,0]]": rhs2 == _q([[1, 0], [0, 0]], [[0, 0], [1, 0]]),
        "premise differs": not (lhs2 == rhs2),
    }
    Af, Bf = A.to_float(), B.to_float()
    rep = check_rol_plain(Af, Bf, cfg.tol)
    ctx = Pair(Af, Bf)
    dev = max(
        _match(ctx.ABN, target),
        _match(ctx.BNAN, target),
        _match(ctx.B @ ctx.BN @ Af.H @ Af @ Bf, lhs2),
    )
    checks["float report: conclusion true, premise 2 false"] = rep.conclusion_holds and not rep.premises_hold[1]
    checks[f"float matches exact (<= {FLOAT_EXACT_TOL:g})"] = dev <= FLOAT_EXACT_TOL
    bad = [k for k, v in checks.items() if not v]
    return CriterionResult(
        3,
        "ROL counterexample A=[1 e], B=diag(1,e)",
        not bad,
        "all exact entries reproduced" if not bad else f"failed: {bad}",
        {"checks": checks, "float_deviation": dev},
        time.perf_counter() - t0,
    )


def criterion_fol_example(cfg: SuiteConfig) -> CriterionResult:
    t0 = time.perf_counter()
    A, B = fol_example()
    AN, BN, ABN = ex.exact_ndmpi(A), ex.exact_ndmpi(B), ex.exact_ndmpi(A @ B)
    d10 = _q([[1, 0], [0, 0]], [[0, 0], [0, 0]])
    lhs3 = AN @ A @ B.H @ A.H
    rhs3 = B.H @ A.H
    checks = {
        "(AB)^N = diag(1,0)": ABN == d10,
        "AN BN = diag(1,0)": AN @ BN == d10,
        "AN A B* A* = diag(1,0)": lhs3 == d10,
        "B* A* = diag(1,e)": rhs3 == _q([[1, 0], [0, 0]], [[0, 0], [0, 1]]),
    }
    Af, Bf = A.to_float(), B.to_float()
    rep = check_fol(Af, Bf, cfg.tol)
    ctx = Pair(Af, Bf)
    dev = max(_match(ctx.ABN, d10), _match(ctx.AN @ ctx.BN, d10), _match(ctx.AN @ Af @ Bf.H @ Af.H, lhs3))
    checks["float report: conclusion true, premise 3 false"] = rep.conclusion_holds and not rep.premises_hold[2]
    checks[f"float matches exact (<= {FLOAT_EXACT_TOL:g})"] = dev <= FLOAT_EXACT_TOL
    bad = [k for k, v in checks.items() if not v]
    return CriterionResult(
        4,
        "FOL counterexample A=diag(1,e), B=I",
        not bad,
        "all exact entries reproduced" if not bad else f"failed: {bad}",
        {"checks": checks, "float_deviation": dev},
        time.perf_counter() - t0,
    )


# ---- criterion 5: implication battery ----

GENERAL = ["essential", "plain", "single", "dmpgi", "commuting", "123"]


def pair_plan(cfg: SuiteConfig):
    """(pool, family, seed) triples; square pools feed fol, the invertible pool feeds invertible."""
    plan = []
    n_sq, n_rect, n_inv = cfg.n(2000, 10), cfg.n(1000, 5), cfg.n(2000, 10)
    for pool, fams, count in (("square", SQUARE, n_sq), ("rect", RECTANGULAR, n_rect), ("inv", INVERTIBLE_LEFT, n_inv)):
        for i in range(count):
            plan.append((pool, fams[i % len(fams)], cfg.seed * 1_000_003 + i))
    return plan


def evaluate_pair(item, tol=PENROSE_TOL):
    """All applicable checkers on one pair; returns {checker: (respected, applicable)}."""
    pool, family, seed = item
    A, B = FAMILIES[family](seed)
    ctx = Pair(A, B)
    out = {}
    names = ["invertible"] if pool == "inv" else GENERAL + (["fol"] if pool == "square" else [])
    for name in names:
        rep = CHECKERS[name](A, B, tol, ctx)
        ok = rep.notes["equivalence_respected"] if name == "123" else rep.implication_respected
        out[name] = (ok, rep.applicable, all(rep.premises_hold))
    if pool != "inv":
        cons = check_commutation_consequences(A, B, tol, ctx)
        out["consequences"] = (cons.implication_respected, True, cons.implied)
    return out


def _evaluate(args):
    item, tol = args
    return item, evaluate_pair(item, tol)


def criterion_implications(cfg: SuiteConfig) -> CriterionResult:
    t0 = time.perf_counter()
    plan = pair_plan(cfg)
    results = _map(_evaluate, [(p, cfg.tol) for p in plan], cfg.workers)
    tally: dict[str, dict] = {}
    first_violation = {}
    for item, res in results:  # plan order, independent of worker scheduling
        for name, (ok, applicable, premised) in res.items():
            t = tally.setdefault(name, {"pairs": 0, "violations": 0, "premises_true": 0, "not_applicable": 0})
            t["pairs"] += 1
            t["violations"] += not ok
            t["premises_true"] += premised
            t["not_applicable"] += not applicable
            if not ok and name not in first_violation:
                first_violation[name] = item
    need = cfg.n(2000, 10)
    short = [k for k, v in tally.items() if k != "consequences" and v["pairs"] < need]
    viol = {k: v["violations"] for k, v in tally.items() if v["violations"]}
    ok = not viol and not short and set(CHECKERS) <= set(tally)
    detail = ", ".join(f"{k}: {v['pairs']} pairs/{v['violations']} viol" for k, v in sorted(tally.items()))
    return CriterionResult(
        5,
        "order-law implications never violated",
        ok,
        detail + (f"; first violations {first_violation}" if first_violation else ""),
        {"tally": tally, "first_violation": first_violation, "min_pairs": need},
        time.perf_counter() - t0,
    )


# ---- criterion 6: non-vacuity ----


def criterion_nonvacuity(cfg: SuiteConfig) -> CriterionResult:
    t0 = time.perf_counter()
    count = cfg.n(200, 10)
    stats = {}
    for name, family in (("essential", "orthonormal-left"), ("plain", "orthonormal-left/essential-right")):
        premised, worst = 0, 0.0
        for i in range(count):
            A, B = FAMILIES[family](cfg.seed * 7919 + i)
            rep = CHECKERS[name](A, B, cfg.tol)
            premised += all(rep.premises_hold)
            worst = max(worst, rep.conclusion_residual)
        stats[name] = {"family": family, "pairs": count, "premises_all_true": premised, "worst_conclusion": worst}
    ok = all(s["premises_all_true"] == count and s["worst_conclusion"] <= cfg.tol for s in stats.values())
    detail = "; ".join(
        f"{k} on {s['family']}: premises true {s['premises_all_true']}/{s['pairs']}, "
        f"worst conclusion {s['worst_conclusion']:.2e}"
        for k, s in stats.items()
    )
    return CriterionResult(6, "implications exercised non-vacuously", ok, detail, stats, time.perf_counter() - t0)


# ---- criterion 7: identities and the alternative first condition ----


def oracle_candidates(A: ex.RationalDualMatrix, seed: int):
    """Named candidates X̂ for the alternative-condition comparison, all exact."""
    rng = np.random.default_rng(seed)
    N = ex.exact_ndmpi(A)
    m, n = A.shape

    def scaled(c):
        c = Fraction(c)
        return ex.RationalDualMatrix(N.std * c, N.dual * c)

    S = ex.exact_pinv(A.std)
    P, Q = ex.qmatmul(A.std, S), ex.qmatmul(S, A.std)
    W = ex.qmat([[ex.GaussQ(int(rng.integers(-3, 4)), int(rng.integers(-3, 4))) for _ in range(m)] for _ in range(n)])
    null_shift = ex.qmatmul(ex.qmatmul(ex.qeye(n) - Q, W), ex.qeye(m) - P)
    return {
        "ndmpi": N,
        "mpdgi": ex.exact_mpdgi(A),
        "zero": ex.RationalDualMatrix(ex.qzeros(n, m), ex.qzeros(n, m)),
        "2*ndmpi": scaled(2),
        "ndmpi/2": scaled(Fraction(1, 2)),
        "-ndmpi": scaled(-1),
        "A*": A.H,
        "ndmpi+e*null": N + ex.RationalDualMatrix(ex.qzeros(n, m), null_shift),
    }


def criterion_identities(cfg: SuiteConfig) -> CriterionResult:
    t0 = time.perf_counter()
    count = cfg.n(200, 10)
    worst_id, worst_lemma = 0.0, 0.0
    for i in range(count):
        rng = np.random.default_rng([cfg.seed, 11, i])
        A = mixed_matrix(cfg.seed + 1, i)
        n = A.shape[1]
        B = random_dual(n, n, n, rng)
        worst_id = max(worst_id, identity_suite(A, cfg.tol).worst)
        worst_lemma = max(worst_lemma, lemma_suite(A, B, cfg.tol).worst)
    n_oracle = cfg.n(30, 3)
    compared, disagreements, eq1_true, eq1_false = 0, [], 0, 0
    for i in range(n_oracle):
        Aq = rational_matrix(cfg.seed + 1, i)
        for name, X in oracle_candidates(Aq, cfg.seed + i).items():
            res = ex.exact_penrose(Aq, X)
            if not (res[3] and res[4]):
                continue
            compared += 1
            eq1_true += res[1]
            eq1_false += not res[1]
            if res[1] != res["alt"]:
                disagreements.append((i, name))
    ok = worst_id <= cfg.tol and worst_lemma <= cfg.tol and not disagreements and eq1_true > 0 and eq1_false > 0
    return CriterionResult(
        7,
        "NDMPI identities and alternative first condition",
        ok,
        f"{count} matrices: six identities worst {worst_id:.2e}, lemma identities worst {worst_lemma:.2e}; "
        f"alternative condition compared on {compared} exact candidates "
        f"({eq1_true} satisfy eq1, {eq1_false} do not), {len(disagreements)} disagreements",
        {
            "identity_worst": worst_id,
            "lemma_worst": worst_lemma,
            "oracle_compared": compared,
            "eq1_true": eq1_true,
            "eq1_false": eq1_false,
            "disagreements": disagreements,
        },
        time.perf_counter() - t0,
    )


# ---- criterion 8: existence gates ----


def gate_instance(seed: int, i: int, positive: bool) -> DualMatrix:
    rng = np.random.default_rng([seed, 13, i, int(positive)])
    m, n = (int(x) for x in rng.integers(2, 7, size=2))
    if positive:
        return random_essential(m, n, int(rng.integers(0, min(m, n) + 1)), rng)
    # rank deficiency on both sides plus a generic dual part gives a nonzero corner
    return random_dual(m, n, int(rng.integers(0, min(m, n))), rng)


def criterion_gates(cfg: SuiteConfig) -> CriterionResult:
    t0 = time.perf_counter()
    count = cfg.n(100, 5)
    disagreements = []
    labels = {True: 0, False: 0}
    for positive in (True, False):
        for i in range(count):
            A = gate_instance(cfg.seed, i, positive)
            gate, _ = nonessential_gate(A, cfg.tol)
            try:
                dmpgi(A, cfg.tol)
                has_dmpgi = True
            except DoesNotExist:
                has_dmpgi = False
            try:
                dual_rank_decomposition(A, cfg.tol)
                has_dec = True
            except NotDecomposable:
                has_dec = False
            labels[gate] += 1
            if not (gate == has_dmpgi == has_dec == positive):
                disagreements.append((positive, i, gate, has_dmpgi, has_dec))
    return CriterionResult(
        8,
        "DMPGI existence and rank decomposability match the gate",
        not disagreements,
        f"{count} positive + {count} negative instances, gate true on {labels[True]}, "
        f"{len(disagreements)} disagreements",
        {"disagreements": disagreements, "gate_true": labels[True], "gate_false": labels[False]},
        time.perf_counter() - t0,
    )


# ---- criterion 9: solver ----


def criterion_solver(cfg: SuiteConfig) -> CriterionResult:
    t0 = time.perf_counter()
    count, directions = cfg.n(100, 5), cfg.n(50, 5)
    worst_res, better = 0.0, []
    comparisons = 0
    for i in range(count):
        rng = np.random.default_rng([cfg.seed, 17, i])
        m, n = (int(x) for x in rng.integers(1, 7, size=2))
        A = random_essential(m, n, int(rng.integers(1, min(m, n) + 1)), rng)
        y = DualMatrix(random_complex(n, 1, rng), random_complex(n, 1, rng))
        b = A @ y
        sol = solve_min_norm(A, b)
        worst_res = max(worst_res, abs(sol.residual_norm.std))
        x, r0, x0 = sol.solution, sol.residual_norm, dual_norm(sol.solution)
        proj = DualMatrix.identity(n) - ndmpi(A) @ A
        for _ in range(directions):
            w = DualMatrix(random_complex(n, 1, rng), random_complex(n, 1, rng))
            x2 = x + proj @ w
            r2 = dual_norm(A @ x2 - b)
            comparisons += 1
            c = total_cmp(r2, r0, cfg.tol)
            if c == Ordering.LESS or (c == Ordering.EQUAL and total_cmp(dual_norm(x2), x0, cfg.tol) == Ordering.LESS):
                better.append(i)
    ok = worst_res <= cfg.tol and not better
    return CriterionResult(
        9,
        "minimum-norm solver",
        ok,
        f"{count} consistent systems, worst residual {worst_res:.2e}; "
        f"{comparisons} perturbed candidates, {len(better)} strictly better",
        {"worst_residual": worst_res, "comparisons": comparisons, "better": better},
        time.perf_counter() - t0,
    )


def run_suite(cfg: SuiteConfig = SuiteConfig(), only=None, progress=None) -> list[CriterionResult]:
    """Run the selected criteria (all by default) in order."""
    rows: list = []
    steps = [
        (1, lambda: criterion_penrose(cfg, rows)),
        (2, lambda: criterion_dual_path(cfg, rows or None)),
        (3, lambda: criterion_rol_example(cfg)),
        (4, lambda: criterion_fol_example(cfg)),
        (5, lambda: criterion_implications(cfg)),
        (6, lambda: criterion_nonvacuity(cfg)),
        (7, lambda: criterion_identities(cfg)),
        (8, lambda: criterion_gates(cfg)),
        (9, lambda: criterion_solver(cfg)),
    ]
    out = []
    for number, fn in steps:
        if only and number not in only:
            continue
        res = fn()
        out.append(res)
        if progress:
            progress(res)
    return out


def summary_table(results: list[CriterionResult], timings: bool = False) -> str:
    """Fixed-width table; without ``timings`` the text depends only on seed and config."""
    lines = [f"{'#':>2}  {'result':6}  " + (f"{'time':>7}  " if timings else "") + "criterion"]
    indent = " " * (10 + (9 if timings else 0))
    for r in results:
        t = f"{r.seconds:6.2f}s  " if timings else ""
        lines.append(f"{r.number:>2}  {'PASS' if r.passed else 'FAIL':6}  {t}{r.name}")
        lines.append(indent + r.detail)
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines) + "\n"
