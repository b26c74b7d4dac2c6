"""Reducibility of tubal matrices.

A tubal matrix is reducible when some nonempty proper index set ``I`` has
``a[i, j] == 0`` for every ``i in I`` and ``j not in I``.  Three routes are
provided and must agree:

* :func:`is_reducible_subset` enumerates every candidate ``I`` (the oracle);
* :func:`is_reducible_scc` looks for a terminal strongly connected component
  of the tube-support digraph (edge ``i -> j`` iff tube ``a[i, j]`` is nonzero);
* :func:`is_irreducible_power` checks that every tube of ``(A + I)^(n-1)`` is
  nonzero, for nonnegative ``A``.

Indices are 0-based.  An ``n == 1`` matrix is irreducible by convention.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .cone import _resolve, classify_matrix
from .core import PermutationTensor, TubalMatrix, identity, permute, tprod
from .errors import CapacityError, DomainError, VerificationError

__all__ = [
    "Verdict",
    "SupportDigraph",
    "ReducibilityCertificate",
    "BlockPartition",
    "PowerCriterion",
    "support_digraph",
    "strongly_connected_components",
    "condensation",
    "is_reducible_subset",
    "is_reducible_scc",
    "is_irreducible_power",
    "is_irreducible",
    "block_triangularize",
    "is_irreducible_cpz",
    "MAX_SUBSET_N",
]

MAX_SUBSET_N = 20


class Verdict(enum.Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"


@dataclass(frozen=True)
class SupportDigraph:
    """Tube-support digraph; ``adjacency[i, j]`` is True iff tube (i, j) is nonzero."""

    adjacency: np.ndarray

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def successors(self, i: int) -> list[int]:
        return [int(j) for j in np.flatnonzero(self.adjacency[i])]

    def is_closed(self, subset) -> bool:
        """True iff no edge leaves ``subset``."""
        inside = np.zeros(self.n, dtype=bool)
        inside[list(subset)] = True
        return not np.any(self.adjacency[np.ix_(inside, ~inside)])


def support_digraph(A: TubalMatrix, tol: float | None = None) -> SupportDigraph:
    tol = _resolve(A, tol)
    adj = np.any(np.abs(A.data) > tol, axis=-1)
    adj.flags.writeable = False
    return SupportDigraph(adj)


@dataclass(frozen=True)
class BlockPartition:
    """``P * A * P^T`` cut after the first ``n1`` indices.

    Blocks are raw ``(rows, cols, p)`` arrays since off-diagonal blocks are
    rectangular.
    """

    permuted: TubalMatrix
    n1: int

    @property
    def top_left(self) -> np.ndarray:
        return self.permuted.data[: self.n1, : self.n1]

    @property
    def top_right(self) -> np.ndarray:
        return self.permuted.data[: self.n1, self.n1 :]

    @property
    def bottom_left(self) -> np.ndarray:
        return self.permuted.data[self.n1 :, : self.n1]

    @property
    def bottom_right(self) -> np.ndarray:
        return self.permuted.data[self.n1 :, self.n1 :]


@dataclass(frozen=True)
class ReducibilityCertificate:
    """Verdict plus, when reducible, a closed index set and the permutation
    bringing ``A`` to block upper-triangular form ``[[B, C], [0, D]]``.

    The permutation lists the complement of ``witness`` first (ascending),
    then ``witness`` (ascending), so ``block_sizes == (n - |I|, |I|)``.
    """

    verdict: Verdict
    method: str
    witness: tuple[int, ...] | None = None
    permutation: PermutationTensor | None = None
    block_sizes: tuple[int, int] | None = None

    @property
    def irreducible(self) -> bool:
        return self.verdict is Verdict.IRREDUCIBLE

    @property
    def reducible(self) -> bool:
        return self.verdict is Verdict.REDUCIBLE


def _witness_permutation(n: int, witness, p: int) -> PermutationTensor:
    inside = set(witness)
    order = [i for i in range(n) if i not in inside] + sorted(inside)
    return PermutationTensor(order, p)


def _certificate(A: TubalMatrix, witness, method: str, tol: float) -> ReducibilityCertificate:
    witness = tuple(sorted(int(i) for i in witness))
    P = _witness_permutation(A.n, witness, A.p)
    cert = ReducibilityCertificate(
        Verdict.REDUCIBLE, method, witness, P, (A.n - len(witness), len(witness))
    )
    block_triangularize(A, cert, tol)  # reconstruct and verify
    return cert


def _irreducible(method: str) -> ReducibilityCertificate:
    return ReducibilityCertificate(Verdict.IRREDUCIBLE, method)


def _lex_subsets(n: int):
    """Nonempty proper subsets of range(n) as sorted tuples, in lexicographic order."""
    stack = [(i,) for i in reversed(range(n))]
    while stack:
        s = stack.pop()
        if len(s) < n:
            yield s
        stack.extend(s + (j,) for j in reversed(range(s[-1] + 1, n)))


def is_reducible_subset(A: TubalMatrix, tol: float | None = None) -> ReducibilityCertificate:
    """Exhaustive search over all nonempty proper index sets.

    Returns the lexicographically smallest witness.  Limited to
    ``n <= MAX_SUBSET_N``; use :func:`is_reducible_scc` beyond that.
    """
    if A.n > MAX_SUBSET_N:
        raise CapacityError(
            f"subset search over 2^{A.n} sets refused (n > {MAX_SUBSET_N}); use is_reducible_scc"
        )
    tol = _resolve(A, tol)
    zero = ~np.any(np.abs(A.data) > tol, axis=-1)
    for subset in _lex_subsets(A.n):
        outside = np.ones(A.n, dtype=bool)
        outside[list(subset)] = False
        if np.all(zero[np.ix_(list(subset), outside)]):
            return _certificate(A, subset, "subset", tol)
    return _irreducible("subset")


def strongly_connected_components(graph: SupportDigraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative.  Components come out in reverse
    topological order (sinks first); each component is sorted."""
    n = graph.n
    succ = [graph.successors(i) for i in range(n)]
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while pos < len(succ[v]):
                w = succ[v][pos]
                pos += 1
                if index[w] < 0:
                    work.append((v, pos))
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def condensation(A: TubalMatrix, tol: float | None = None) -> list[list[int]]:
    """Strongly connected components in topological order (sources first).

    Permuting ``A`` by the concatenation of these components gives a block
    upper-triangular tubal matrix with irreducible diagonal blocks.
    """
    return list(reversed(strongly_connected_components(support_digraph(A, tol))))


def is_reducible_scc(A: TubalMatrix, tol: float | None = None) -> ReducibilityCertificate:
    """Reducibility from strong connectivity of the support digraph.

    A closed set is any union of components closed under reachability, so a
    terminal component (no edge leaving it) is a witness whenever there is
    more than one component.  Ties go to the terminal component containing
    the smallest index.
    """
    tol = _resolve(A, tol)
    graph = support_digraph(A, tol)
    comps = strongly_connected_components(graph)
    if len(comps) <= 1:
        return _irreducible("scc")
    terminal = [c for c in comps if graph.is_closed(c)]
    witness = min(terminal, key=lambda c: c[0])
    return _certificate(A, witness, "scc", tol)


@dataclass(frozen=True)
class PowerCriterion:
    verdict: Verdict
    power: TubalMatrix

    @property
    def irreducible(self) -> bool:
        return self.verdict is Verdict.IRREDUCIBLE


def _exact_int_power_safe(base: np.ndarray, k: int) -> bool:
    n, _, p = base.shape
    bound = float(np.max(np.abs(base))) if base.size else 0.0
    return k == 0 or (max(bound, 1.0) * n * p) ** k < 2.0**62


def is_irreducible_power(A: TubalMatrix, tol: float | None = None) -> PowerCriterion:
    """Compute ``(A + I)^(n-1)`` by repeated t-products and test tube positivity.

    Entries with ``|a| <= tol`` are zeroed first, so the same support as the
    other two routes is used.  Integer data is multiplied exactly (Python
    integers if int64 could overflow).  With nonnegative data there is no
    cancellation, so the power itself is tested at tolerance 0.
    """
    tol = _resolve(A, tol)
    if not classify_matrix(A, tol).is_nonnegative:
        raise DomainError("power criterion requires a nonnegative tubal matrix")
    data = np.where(np.abs(A.data) > tol, A.data, 0)
    if A.is_integer:
        data = data.astype(np.int64)
        if not _exact_int_power_safe(data + 1, A.n - 1):
            data = data.astype(object)
    base = TubalMatrix(data) + identity(A.n, A.p).astype(data.dtype)
    power = identity(A.n, A.p).astype(data.dtype)
    for _ in range(A.n - 1):
        power = tprod(power, base)
    ok = classify_matrix(power, 0.0).is_positive
    return PowerCriterion(Verdict.IRREDUCIBLE if ok else Verdict.REDUCIBLE, power)


def is_irreducible(A: TubalMatrix, method: str = "scc", tol: float | None = None) -> bool:
    if method == "scc":
        return is_reducible_scc(A, tol).irreducible
    if method == "subset":
        return is_reducible_subset(A, tol).irreducible
    if method == "power":
        return is_irreducible_power(A, tol).irreducible
    raise ValueError(f"unknown method {method!r}")


def block_triangularize(
    A: TubalMatrix, certificate: ReducibilityCertificate, tol: float | None = None
) -> tuple[PermutationTensor, BlockPartition]:
    """Apply a certificate's permutation and check the bottom-left block vanishes.

    Raises :class:`VerificationError` if the certificate is not a reducible
    one or the reconstructed block has an entry above ``tol``.
    """
    tol = _resolve(A, tol)
    if not certificate.reducible or certificate.permutation is None:
        raise VerificationError("certificate does not claim reducibility")
    n2 = len(certificate.witness or ())
    if not 0 < n2 < A.n:
        raise VerificationError(f"witness {certificate.witness} is not a nonempty proper subset")
    P = certificate.permutation
    parts = BlockPartition(permute(P, A), A.n - n2)
    if np.any(np.abs(parts.bottom_left) > tol):
        raise VerificationError(
            f"witness {certificate.witness} leaves a nonzero tube in the bottom-left block"
        )
    return P, parts


def is_irreducible_cpz(A: TubalMatrix) -> Verdict:
    """Irreducibility of a cubical ``n x n x n`` tensor in the entrywise sense:
    reducible iff some nonempty proper ``I`` has ``A[i, j, k] == 0`` for all
    ``i in I`` and ``j, k not in I`` (the third index runs along tubes)."""
    if A.n != A.p:
        raise DomainError(f"entrywise irreducibility needs n == p, got n={A.n}, p={A.p}")
    nonzero = A.data != 0
    for size in range(1, A.n):
        for subset in itertools.combinations(range(A.n), size):
            outside = [j for j in range(A.n) if j not in subset]
            if not np.any(nonzero[np.ix_(list(subset), outside, outside)]):
                return Verdict.REDUCIBLE
    return Verdict.IRREDUCIBLE
