"""Executable checks of the Perron-Frobenius statements for nonnegative tubal matrices.

Each check returns :class:`ItemVerdict` objects with status ``PASS``,
``FAIL`` or ``NOT_APPLICABLE`` (hypothesis not met) and numeric evidence.

Statements quantified over *every* eigenvector are decided on the whole
eigenspace rather than on samples: eigenspaces are computed as explicit
bases, "is there a nonnegative eigenvector with property Q" becomes a small
linear program over the basis coefficients, and "is there an eigenvector with
a zero tube" becomes a rank test.  Eigensolver vectors and random
combinations inside each eigenspace are also classified and reported as
witnesses.

Vectors are compared after scaling to unit entry-sum (nonnegative case) or
unit max-modulus, so vector tolerances are absolute.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.optimize import linprog

from .cone import ConeClass, classify_matrix, classify_tubes, classify_vector, default_tol, magnitude
from .core import TubalMatrix, TubalVector, fold_vector, tprod_vec, transpose, unfold
from .errors import DomainError
from .irreducibility import is_reducible_scc
from .spectra import Side, scale, t_eigenspace, t_eigenvector, t_spectrum

__all__ = [
    "Status",
    "ItemVerdict",
    "PFReport",
    "Tolerances",
    "check_weak_pf",
    "check_irreducible_pf",
    "check_enhanced_pf",
    "check_subinvariance_lemma",
    "check_magnitude_lemma",
    "delta",
    "nonnegative_cone_rank",
    "pf_report",
    "IRREDUCIBLE_ITEMS",
    "ENHANCED_ITEMS",
]

IRREDUCIBLE_ITEMS = (
    "rho_is_eigenvalue",
    "rho_positive",
    "nonnegative_eigenvectors_positive",
    "positive_rho_eigenvector",
    "no_zero_tubes_on_spectral_circle",
    "no_mixed_sign_rho_eigenvectors",
    "strongly_positive_implies_rho",
)
ENHANCED_ITEMS = (
    "rho_positive_eigenvalue",
    "nonnegative_eigenvectors_strongly_positive",
    "unique_strongly_positive_direction",
    "nonnegative_eigenvector_implies_rho",
)

N_RANDOM_WITNESSES = 100


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not_applicable"


@dataclass
class ItemVerdict:
    id: str
    group: str
    status: Status
    evidence: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_dict(self) -> dict:
        return {"id": self.id, "group": self.group, "status": self.status.value,
                "evidence": _jsonable(self.evidence)}


@dataclass(frozen=True)
class Tolerances:
    """Verdict thresholds.

    ``classify`` and ``residual`` are multiplied by ``scale(A)``; ``vector``
    applies to normalized eigenvectors; ``rank`` is the singular-value cutoff
    for rank tests; ``lp_slack`` is how far below zero an LP may push an entry
    that is nominally nonnegative.
    """

    classify: float = 1e-9
    residual: float = 1e-8
    vector: float = 1e-9
    rank: float = 1e-8
    lp_slack: float = 1e-12


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, (np.floating, float)):
        v = float(x)
        return v if math.isfinite(v) else ("inf" if v > 0 else "-inf" if v < 0 else "nan")
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, TubalVector):
        return _jsonable(x.data)
    if isinstance(x, enum.Enum):
        return x.value
    return x


# ------------------------------------------------------------ cone geometry


def _tube_rows(i: int, n: int, p: int) -> np.ndarray:
    return np.arange(p) * n + i


def _orient(v: np.ndarray, slack: float):
    """Nonnegative multiple of ``v`` with entry-sum 1, or None."""
    s = v.sum()
    if abs(s) <= slack * np.abs(v).sum():
        return None
    x = v / s
    return x if x.min() >= -slack else None


def _lp(cost, A_ub=None, b_ub=None, A_eq=None, b_eq=None, bounds=None):
    res = linprog(cost, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                  bounds=bounds, method="highs")
    return res


def _max_min_point(V: np.ndarray, slack: float):
    """Maximize ``t`` over ``x = V c`` with ``x >= t``, ``sum(x) = 1``.

    Returns ``(x, t)`` or ``None`` when the eigenspace has no nonnegative
    nonzero vector.  ``t > 0`` means a strongly positive vector exists.
    """
    m, d = V.shape
    if d == 0:
        return None
    if d == 1:
        x = _orient(V[:, 0], slack)
        return None if x is None else (x, float(x.min()))
    cost = np.zeros(d + 1)
    cost[-1] = -1.0
    A_ub = np.hstack([-V, np.ones((m, 1))])
    A_eq = np.hstack([V.sum(axis=0), [0.0]])[None, :]
    bounds = [(None, None)] * d + [(None, 1.0)]
    res = _lp(cost, A_ub, np.zeros(m), A_eq, [1.0], bounds)
    if res.status != 0 or -res.fun < -slack:
        return None
    x = V @ res.x[:d]
    return x, float(x.min())


def _min_over_nonneg(V: np.ndarray, weights: np.ndarray, slack: float) -> float:
    """``min weights . x`` over ``x = V c >= -slack`` with ``sum(x) = 1`` (inf if infeasible)."""
    m, d = V.shape
    if d == 1:
        x = _orient(V[:, 0], slack)
        return math.inf if x is None else float(weights @ x)
    res = _lp(V.T @ weights, -V, np.full(m, slack), V.sum(axis=0)[None, :], [1.0],
              [(None, None)] * d)
    return float(res.fun) if res.status == 0 else math.inf


def _max_over_nonneg(V: np.ndarray, weights: np.ndarray, slack: float) -> float:
    return -_min_over_nonneg(V, -weights, slack)


def nonnegative_cone_rank(V: np.ndarray, vector_tol: float = 1e-9, slack: float = 1e-12,
                          rank_tol: float = 1e-8) -> int:
    """Dimension of the span of the nonnegative vectors in ``range(V)``.

    Entries that vanish on every nonnegative vector of the space (implicit
    equalities of the cone ``{c : V c >= 0}``) cut the span down to
    ``d - rank(V[zero_rows])``.
    """
    d = V.shape[1]
    found = _max_min_point(V, slack)
    if found is None:
        return 0
    if d == 1 or found[1] > vector_tol:
        return d
    m = V.shape[0]
    zero_rows = [e for e in range(m) if _max_over_nonneg(V, np.eye(m)[e], slack) <= vector_tol]
    if not zero_rows:
        return d
    s = np.linalg.svd(V[zero_rows], compute_uv=False)
    return d - int(np.sum(s > rank_tol))


def _rank(vectors: list[np.ndarray], tol: float) -> int:
    if not vectors:
        return 0
    M = np.array([v / np.max(np.abs(v)) for v in vectors])
    s = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))


# ------------------------------------------------------------ shared analysis


class _Analysis:
    """Spectrum and eigenspaces of one tubal matrix, computed once."""

    def __init__(self, A: TubalMatrix, tol: Tolerances, support_tol: float | None):
        self.A = A
        self.tol = tol
        self.scale = scale(A)
        self.class_tol = tol.classify * self.scale
        self.res_tol = tol.residual * self.scale
        self.support_tol = default_tol(A) if support_tol is None else support_tol
        self.input_class = classify_matrix(A, self.support_tol)
        self.nonzero = self.input_class is not ConeClass.ZERO
        self.nonnegative = self.input_class.is_nonnegative
        self._spectrum = None
        self._irreducible = None
        self._real_spaces: dict[float, np.ndarray] = {}

    @property
    def spectrum(self):
        if self._spectrum is None:
            self._spectrum = t_spectrum(self.A)
        return self._spectrum

    @property
    def rho(self) -> float:
        return self.spectrum.rho

    @property
    def irreducible(self) -> bool:
        if self._irreducible is None:
            self._irreducible = is_reducible_scc(self.A, self.support_tol).irreducible
        return self._irreducible

    @property
    def has_strong_tube(self) -> bool:
        tubes = classify_tubes(self.A, self.support_tol)
        return any(c is ConeClass.STRONGLY_POSITIVE for c in tubes.ravel())

    def real_eigenvalues(self) -> list[float]:
        return [v for v in self.spectrum.real_eigenvalues()]

    def rho_value(self) -> float:
        """The real eigenvalue closest to +rho (rho itself up to rounding)."""
        reals = self.real_eigenvalues()
        return min(reals, key=lambda v: abs(v - self.rho)) if reals else self.rho

    def real_space(self, lam: float) -> np.ndarray:
        if lam not in self._real_spaces:
            self._real_spaces[lam] = t_eigenspace(self.A, lam, real=True)
        return self._real_spaces[lam]

    def complex_space(self, lam: complex) -> np.ndarray:
        return t_eigenspace(self.A, lam)

    def is_rho(self, lam: float) -> bool:
        return abs(lam - self.rho) <= self.spectrum.cluster_tol

    def vec(self, x: np.ndarray) -> TubalVector:
        return fold_vector(x, self.A.n)

    def residual(self, lam, x: np.ndarray) -> float:
        X = self.vec(x)
        return float(np.max(np.abs(unfold(tprod_vec(self.A, X)) - lam * x)))


def _na(ids, group, reason):
    return [ItemVerdict(i, group, Status.NOT_APPLICABLE, {"reason": reason}) for i in ids]


def _status(ok: bool) -> Status:
    return Status.PASS if ok else Status.FAIL


# ------------------------------------------------------------ weak theorem


def check_weak_pf(A: TubalMatrix, tol: Tolerances = Tolerances(),
                  support_tol: float | None = None, _an: _Analysis | None = None) -> ItemVerdict:
    """``rho(A)`` is a t-eigenvalue with a nonnegative nonzero t-eigenvector.

    Hypothesis: ``A`` nonnegative and nonzero.  The vector is the most
    positive point (largest minimum entry) of the nonnegative part of the
    real ``rho``-eigenspace.
    """
    an = _an or _Analysis(A, tol, support_tol)
    if not (an.nonnegative and an.nonzero):
        return _na(["weak_pf"], "weak", "requires a nonnegative nonzero tubal matrix")[0]
    lam = an.rho_value()
    in_spec = an.is_rho(lam)
    found = _max_min_point(an.real_space(lam), tol.lp_slack)
    if found is None:
        return ItemVerdict("weak_pf", "weak", Status.FAIL,
                           {"rho": an.rho, "reason": "no nonnegative vector in the rho-eigenspace"})
    x, _ = found
    X = an.vec(x)
    cls = classify_vector(X, tol.vector)
    res = an.residual(lam, x)
    ok = in_spec and cls.is_nonnegative and cls is not ConeClass.ZERO and res <= an.res_tol
    return ItemVerdict("weak_pf", "weak", _status(ok), {
        "rho": an.rho, "rho_in_spectrum": in_spec, "vector": X, "vector_class": cls,
        "residual": res, "eigenspace_dim": an.real_space(lam).shape[1],
    })


# ------------------------------------------------------------ irreducible theorem


def _irreducible_hypothesis(an: _Analysis) -> str | None:
    if not an.nonnegative:
        return "requires a nonnegative tubal matrix"
    if not an.nonzero:
        return "requires A != 0"
    if not an.irreducible:
        return "requires an irreducible tubal matrix"
    return None


def _random_combos(V: np.ndarray, count: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    shape = (V.shape[1], count)
    coeffs = rng.standard_normal(shape)
    if np.iscomplexobj(V):
        coeffs = coeffs + 1j * rng.standard_normal(shape)
    return V @ coeffs


def check_irreducible_pf(A: TubalMatrix, tol: Tolerances = Tolerances(),
                         support_tol: float | None = None, side: Side = Side.RIGHT,
                         _an: _Analysis | None = None) -> list[ItemVerdict]:
    """The seven statements for nonnegative irreducible ``A``, in fixed order
    (see ``IRREDUCIBLE_ITEMS``).  With ``side=Side.LEFT`` they are checked for
    left t-eigenvectors, i.e. on ``A^T``.
    """
    group = "irreducible" if side is Side.RIGHT else "irreducible_left"
    if side is Side.LEFT:
        A = transpose(A)
        _an = None
    an = _an or _Analysis(A, tol, support_tol)
    reason = _irreducible_hypothesis(an)
    if reason:
        return _na(IRREDUCIBLE_ITEMS, group, reason)

    n, p = A.n, A.p
    slack, vtol = tol.lp_slack, tol.vector
    rho = an.rho
    lam_rho = an.rho_value()
    items = []

    # rho is an eigenvalue
    perron = _max_min_point(an.real_space(lam_rho), slack)
    pair = t_eigenvector(A, lam_rho)
    items.append(ItemVerdict(IRREDUCIBLE_ITEMS[0], group, _status(an.is_rho(lam_rho) and pair.residual <= an.res_tol), {
        "rho": rho, "closest_real_eigenvalue": lam_rho, "eigensolver_residual": pair.residual,
    }))

    # rho > 0
    items.append(ItemVerdict(IRREDUCIBLE_ITEMS[1], group, _status(rho > an.class_tol),
                             {"rho": rho, "threshold": an.class_tol}))

    # every nonnegative eigenvector is positive
    per_value = []
    ok3 = True
    witnesses = 0
    for lam in an.real_eigenvalues():
        V = an.real_space(lam)
        if _max_min_point(V, slack) is None:
            continue
        masses = [_min_over_nonneg(V, np.isin(np.arange(n * p), _tube_rows(i, n, p)).astype(float), slack)
                  for i in range(n)]
        worst = min(masses)
        cand = [_orient(v, slack) for v in np.hstack([V, _random_combos(V, N_RANDOM_WITNESSES)]).T]
        cand = [x for x in cand if x is not None]
        witnesses += len(cand)
        wit_ok = all(classify_vector(an.vec(x), vtol).is_positive for x in cand)
        ok3 &= worst > vtol and wit_ok
        per_value.append({"eigenvalue": lam, "min_tube_mass": worst, "witnesses_positive": wit_ok})
    items.append(ItemVerdict(IRREDUCIBLE_ITEMS[2], group, _status(ok3 and bool(per_value)), {
        "eigenvalues_with_nonnegative_eigenvectors": per_value, "witnesses_checked": witnesses,
    }))

    # a positive eigenvector at rho
    if perron is None:
        items.append(ItemVerdict(IRREDUCIBLE_ITEMS[3], group, Status.FAIL,
                                 {"reason": "no nonnegative vector in the rho-eigenspace"}))
        x_perron = None
    else:
        x_perron = perron[0]
        V = an.real_space(lam_rho)
        cls = classify_vector(an.vec(x_perron), vtol)
        res = an.residual(lam_rho, x_perron)
        items.append(ItemVerdict(IRREDUCIBLE_ITEMS[3], group, _status(cls.is_positive and res <= an.res_tol), {
            "vector": an.vec(x_perron), "vector_class": cls, "residual": res,
            "eigenspace_dim": V.shape[1],
            "positive_cone_rank": nonnegative_cone_rank(V, vtol, slack, tol.rank),
        }))

    # no zero tubes in eigenvectors of eigenvalues on the spectral circle
    circle = []
    ok5 = True
    for lam in an.spectrum.rho_attaining:
        V = an.complex_space(lam)
        d = V.shape[1]
        sig = []
        for i in range(n):
            block = V[_tube_rows(i, n, p)]
            sig.append(0.0 if block.shape[0] < d else float(np.linalg.svd(block, compute_uv=False)[-1]))
        combos = np.hstack([V, _random_combos(V, N_RANDOM_WITNESSES)])
        combos = combos / np.max(np.abs(combos), axis=0)
        tube_mod = np.sqrt(np.sum(np.abs(combos.reshape(p, n, -1)) ** 2, axis=0))
        ok = d > 0 and min(sig) > tol.rank and float(tube_mod.min()) > vtol
        ok5 &= ok
        circle.append({"eigenvalue": lam, "eigenspace_dim": d, "min_tube_singular_value": min(sig) if sig else 0.0,
                       "min_witness_tube_modulus": float(tube_mod.min())})
    items.append(ItemVerdict(IRREDUCIBLE_ITEMS[4], group, _status(ok5), {"spectral_circle": circle}))

    # real rho-eigenvectors are never part positive, part negative
    V = an.real_space(lam_rho)
    violations = _mixed_sign_search(V, n, p, vtol, slack)
    items.append(ItemVerdict(IRREDUCIBLE_ITEMS[5], group, _status(not violations), {
        "eigenspace_dim": V.shape[1], "violations": violations,
    }))

    # strongly positive eigenvector only at rho
    strong = []
    deltas = []
    ok7 = True
    for lam in an.real_eigenvalues():
        found = _max_min_point(an.real_space(lam), slack)
        if found is None or found[1] <= vtol:
            continue
        at_rho = an.is_rho(lam)
        ok7 &= at_rho
        entry = {"eigenvalue": lam, "min_entry": found[1], "equals_rho": at_rho}
        if x_perron is not None:
            entry["delta"] = delta(an.vec(x_perron), an.vec(found[0]), tol=slack)
            deltas.append(entry["delta"])
        strong.append(entry)
    items.append(ItemVerdict(IRREDUCIBLE_ITEMS[6], group, _status(ok7), {
        "strongly_positive_eigenvalues": strong, "delta_values": deltas,
    }))
    return items


def _mixed_sign_search(V: np.ndarray, n: int, p: int, vtol: float, slack: float) -> list[dict]:
    """Look for ``x`` in ``range(V)`` with one tube nonnegative nonzero and
    some other entry below ``-vtol``."""
    d = V.shape[1]
    m = V.shape[0]
    found = []
    if d == 0:
        return found
    if d == 1:
        v = V[:, 0] / np.max(np.abs(V[:, 0]))
        for x in (v, -v):
            tubes = x.reshape(p, n).T
            pos = [i for i in range(n) if tubes[i].min() >= -vtol and tubes[i].max() > vtol]
            neg = [j for j in range(n) if tubes[j].min() < -vtol]
            if pos and neg:
                found.append({"positive_tubes": pos, "negative_tubes": neg})
        return found
    for i in range(n):
        rows = _tube_rows(i, n, p)
        A_ub = np.zeros((p, d))
        A_ub[:] = -V[rows]
        A_eq = V[rows].sum(axis=0)[None, :]
        for e in range(m):
            if e % n == i:
                continue
            res = _lp(V[e], A_ub, np.full(p, slack), A_eq, [1.0], [(None, None)] * d)
            if res.status == 3 or (res.status == 0 and res.fun < -vtol):
                found.append({"positive_tube": i, "negative_entry": e,
                              "value": "-inf" if res.status == 3 else float(res.fun)})
    return found


# ------------------------------------------------------------ enhanced theorem


def check_enhanced_pf(A: TubalMatrix, tol: Tolerances = Tolerances(),
                      support_tol: float | None = None, _an: _Analysis | None = None) -> list[ItemVerdict]:
    """The four statements that hold once some tube is strongly positive,
    in the order of ``ENHANCED_ITEMS``."""
    group = "enhanced"
    an = _an or _Analysis(A, tol, support_tol)
    reason = _irreducible_hypothesis(an)
    if reason is None and not an.has_strong_tube:
        reason = "requires a strongly positive tube"
    if reason:
        return _na(ENHANCED_ITEMS, group, reason)

    n, p = A.n, A.p
    slack, vtol = tol.lp_slack, tol.vector
    rho = an.rho
    lam_rho = an.rho_value()
    items = [ItemVerdict(ENHANCED_ITEMS[0], group, _status(an.is_rho(lam_rho) and rho > an.class_tol),
                         {"rho": rho})]

    # nonnegative eigenvectors are strongly positive
    per_value = []
    ok2 = True
    for lam in an.real_eigenvalues():
        V = an.real_space(lam)
        if _max_min_point(V, slack) is None:
            continue
        worst = min(_min_over_nonneg(V, row, slack) for row in np.eye(n * p))
        ok2 &= worst > vtol
        per_value.append({"eigenvalue": lam, "min_entry": worst})
    items.append(ItemVerdict(ENHANCED_ITEMS[1], group, _status(ok2 and bool(per_value)),
                             {"eigenvalues_with_nonnegative_eigenvectors": per_value}))

    # unique strongly positive direction at rho
    V = an.real_space(lam_rho)
    found = _max_min_point(V, slack)
    evidence: dict[str, Any] = {"eigenspace_dim": V.shape[1]}
    if found is None or found[1] <= vtol:
        items.append(ItemVerdict(ENHANCED_ITEMS[2], group, Status.FAIL,
                                 dict(evidence, reason="no strongly positive rho-eigenvector")))
    else:
        cone_rank = nonnegative_cone_rank(V, vtol, slack, tol.rank)
        pair = t_eigenvector(A, lam_rho)
        cand = [found[0], _orient(np.real(unfold(pair.vector)), slack)]
        cand += [_orient(v, slack) for v in _random_combos(V, N_RANDOM_WITNESSES).T]
        strong = [x for x in cand if x is not None and x.min() > vtol]
        deltas = [delta(an.vec(strong[0]), an.vec(y), tol=slack) for y in strong[1:]]
        rank = _rank(strong, tol.rank)
        evidence.update({"vector": an.vec(found[0]), "strongly_positive_cone_rank": cone_rank,
                         "witness_rank": rank, "witnesses": len(strong),
                         "delta_values": deltas[:10]})
        items.append(ItemVerdict(ENHANCED_ITEMS[2], group, _status(cone_rank == 1 and rank == 1), evidence))

    # a nonnegative eigenvector forces lam == rho
    carriers = [lam for lam in an.real_eigenvalues() if _max_min_point(an.real_space(lam), slack) is not None]
    ok4 = all(an.is_rho(lam) for lam in carriers)
    items.append(ItemVerdict(ENHANCED_ITEMS[3], group, _status(ok4 and bool(carriers)),
                             {"eigenvalues_with_nonnegative_eigenvectors": carriers}))
    return items


# ------------------------------------------------------------ lemmas and delta


def check_subinvariance_lemma(A: TubalMatrix, X: TubalVector, tol: Tolerances = Tolerances(),
                              support_tol: float | None = None) -> ItemVerdict:
    """If ``A`` has a positive left t-eigenvector at ``rho`` and
    ``A*X - rho*X`` is nonnegative, then ``A*X == rho*X``.

    ``NOT_APPLICABLE`` when the left eigenvector is missing, ``X == 0``, or
    ``A*X - rho*X`` has a negative entry (the hypothesis is not met; this is
    never reported as a pass).
    """
    ident = "subinvariance_lemma"
    an = _Analysis(A, tol, support_tol)
    if not (an.nonnegative and an.nonzero):
        return _na([ident], "lemma", "requires a nonnegative nonzero tubal matrix")[0]
    x = unfold(X)
    if not np.any(x):
        return _na([ident], "lemma", "requires X != 0")[0]
    left = _Analysis(transpose(A), tol, support_tol)
    lam = left.rho_value()
    found = _max_min_point(left.real_space(lam), tol.lp_slack)
    if found is None or not classify_vector(left.vec(found[0]), tol.vector).is_positive:
        return _na([ident], "lemma", "no positive left t-eigenvector at rho")[0]
    rho = an.rho
    diff = unfold(tprod_vec(A, X)) - rho * x
    size = max(1.0, float(np.max(np.abs(x))))
    d_cls = classify_vector(an.vec(diff), an.class_tol * size)
    evidence = {"rho": rho, "left_eigenvector": left.vec(found[0]),
                "difference_class": d_cls, "max_abs_difference": float(np.max(np.abs(diff)))}
    if not d_cls.is_nonnegative:
        return ItemVerdict(ident, "lemma", Status.NOT_APPLICABLE,
                           dict(evidence, reason="hypothesis not met: A*X - rho*X has a negative entry"))
    ok = float(np.max(np.abs(diff))) <= an.res_tol * size
    return ItemVerdict(ident, "lemma", _status(ok), evidence)


def check_magnitude_lemma(A: TubalMatrix, X: TubalVector, tol: float = 1e-12) -> ItemVerdict:
    """``|A*X| <= |A|*|X|`` entrywise, for complex data."""
    lhs = np.abs(unfold(tprod_vec(A, X)))
    rhs = unfold(tprod_vec(magnitude(A), magnitude(X)))
    excess = float(np.max(lhs - rhs))
    return ItemVerdict("magnitude_lemma", "lemma", _status(excess <= tol),
                       {"max_excess": excess, "slack": tol})


def delta(X: TubalVector, Y: TubalVector, tol: float = 0.0) -> float:
    """``sup {s >= 0 : Y - s X nonnegative}`` on unfolded entries.

    Entries with ``|x| <= tol`` count as zero.  Returns ``inf`` when ``X`` is
    zero and ``Y`` nonnegative, ``0`` when ``Y`` is negative somewhere ``X``
    vanishes, otherwise ``max(0, min y_e / x_e)`` over ``x_e > 0``.
    """
    x = np.asarray(unfold(X), dtype=float)
    y = np.asarray(unfold(Y), dtype=float)
    if x.shape != y.shape:
        raise DomainError(f"shape mismatch {X.data.shape} vs {Y.data.shape}")
    if np.any(x < -tol):
        raise DomainError("delta needs a nonnegative X")
    support = x > tol
    if np.any(y[~support] < -tol):
        return 0.0
    if not np.any(support):
        return math.inf
    return max(0.0, float(np.min(y[support] / x[support])))


# ------------------------------------------------------------ report


@dataclass
class PFReport:
    n: int
    p: int
    input_class: ConeClass
    irreducible: bool | None
    has_strongly_positive_tube: bool
    rho: float | None
    items: list[ItemVerdict]
    delta_values: list[float]

    def item(self, ident: str, group: str | None = None) -> ItemVerdict:
        for it in self.items:
            if it.id == ident and (group is None or it.group == group):
                return it
        raise KeyError(ident)

    def group(self, name: str) -> list[ItemVerdict]:
        return [it for it in self.items if it.group == name]

    @property
    def any_failed(self) -> bool:
        return any(it.status is Status.FAIL for it in self.items)

    def to_dict(self) -> dict:
        return {
            "input": {"n": self.n, "p": self.p, "cone_class": self.input_class.value,
                      "irreducible": self.irreducible,
                      "has_strongly_positive_tube": self.has_strongly_positive_tube},
            "rho": self.rho,
            "items": [it.to_dict() for it in self.items],
            "delta_values": _jsonable(self.delta_values),
        }


def pf_report(A: TubalMatrix, tol: Tolerances = Tolerances(), support_tol: float | None = None,
              left: bool = False) -> PFReport:
    """Run every applicable check on ``A`` and assemble the report.

    Items appear in a fixed order: the weak statement, the seven irreducible
    statements, the four enhanced ones, then (with ``left=True``) the seven
    irreducible statements for left t-eigenvectors.
    """
    if A.is_complex:
        raise DomainError("Perron-Frobenius checks need a real tubal matrix")
    an = _Analysis(A, tol, support_tol)
    items = [check_weak_pf(A, tol, support_tol, _an=an)]
    items += check_irreducible_pf(A, tol, support_tol, _an=an)
    items += check_enhanced_pf(A, tol, support_tol, _an=an)
    if left:
        items += check_irreducible_pf(A, tol, support_tol, side=Side.LEFT)
    deltas = []
    for it in items:
        deltas += [v for v in it.evidence.get("delta_values", []) if isinstance(v, float)]
    irreducible = an.irreducible if an.nonnegative else None
    rho = an.rho if an.nonnegative else None
    return PFReport(A.n, A.p, an.input_class, irreducible, an.has_strong_tube if an.nonnegative else False,
                    rho, items, deltas)
