"""Classical finite and affine Coxeter systems with exact element arithmetic.

Supported families (graph conventions, with generator numbering as in the
registry tables):

* finite:  ``A_n`` (n>=1), ``B_n`` (n>=2), ``D_n`` (n>=3), ``I2(m)`` (m>=3),
  generators named ``s1..sn`` / ``s1,s2``;
* affine:  ``affine-A_n`` (n>=1), ``affine-B_n`` (n>=3), ``affine-C_n``
  (n>=2), ``affine-D_n`` (n>=4), generators named ``s0..sn``.

Generator indices are 0-based internally; ``CoxeterSystem.generator_index``
translates display names like ``"s3"``.  The ShortLex generator order is
the internal index order, i.e. ``s0 < s1 < ...`` in affine families and
``s1 < s2 < ...`` in finite ones.

Elements of rank >= 3 systems are exact matrices of the reflection
representation acting on the simple-root basis, with coefficients in Z or
Z[sqrt(2)]; s_i sends alpha_j to alpha_j + c_ij alpha_i (j != i) where
c_ij = 2cos(pi/m(i,j)) and alpha_i to -alpha_i.  Matrices are stored
column-major, so ``w.data[i]`` is the coordinate vector of w(alpha_i); a
generator s_i is a right descent of w exactly when that vector is
non-positive.  Rank-2 systems bypass matrices: a dihedral element is a
``(is_reflection, index)`` pair, which stays exact for every bond order
including infinity.

Bond order 0 in a Coxeter matrix encodes an infinite bond.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from .errors import IndexOutOfRange, InvalidMatrix, ResourceLimit, UnsupportedLabel
from .rings import INT, SQRT2

__all__ = [
    "INFINITE",
    "DEFAULT_BUDGET",
    "Word",
    "CoxeterMatrix",
    "Element",
    "CoxeterSystem",
    "build_system",
    "apply_generator",
    "length",
    "right_descents",
    "shortlex_normal_form",
    "element_from_word",
    "multiply",
    "inverse",
    "enumerate_up_to",
    "enumerate_with_words",
    "enumerate_parabolic",
    "all_reduced_words",
    "parabolic_decompose",
    "minimal_coset_reps",
    "bruhat_leq",
    "word_string",
]

INFINITE = 0  # bond order sentinel for m = infinity
DEFAULT_BUDGET = 10**7

Word = Tuple[int, ...]

_RANK3_BONDS = {2, 3, 4, 6, INFINITE}
_SUPPORTED_RING_BONDS = {2, 3, 4, INFINITE}


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix of bond orders m(i, j); diagonal 1, 0 = infinity."""

    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n < 1:
            raise InvalidMatrix("empty matrix")
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise InvalidMatrix("matrix is not square")
            if row[i] != 1:
                raise InvalidMatrix(f"diagonal entry m({i},{i}) = {row[i]} != 1")
            for j, m in enumerate(row):
                if m != self.entries[j][i]:
                    raise InvalidMatrix(f"asymmetric entries at ({i},{j})")
                if i != j and m != INFINITE and m < 2:
                    raise InvalidMatrix(f"off-diagonal m({i},{j}) = {m} < 2")
                if i != j and n >= 3 and m not in _RANK3_BONDS:
                    raise InvalidMatrix(
                        f"bond order {m} not permitted at rank >= 3 (allowed: 2,3,4,6,inf)"
                    )

    @property
    def rank(self) -> int:
        return len(self.entries)

    def bond(self, i: int, j: int) -> int:
        return self.entries[i][j]


@dataclass(frozen=True)
class Element:
    """A group element: reflection matrix (column tuple) or dihedral tag.

    ``data`` doubles as the canonical key; equal data means equal group
    elements because both backends are faithful.
    """

    data: tuple
    length: int


def _cos_coeff(ring, m: int):
    # 2cos(pi/m) for the supported bond orders
    if m == 2:
        return ring.zero
    if m == 3:
        return ring.one
    if m == 4:
        return SQRT2.sqrt2
    if m == INFINITE:
        return ring.two
    raise UnsupportedLabel(f"bond order {m} needs an unsupported ring")


class CoxeterSystem:
    """A Coxeter system together with its exact element backend."""

    def __init__(self, label: str, matrix: CoxeterMatrix, index_base: int):
        self.label = label
        self.matrix = matrix
        self.index_base = index_base
        self.rank = matrix.rank
        if self.rank == 2:
            self.backend = "dihedral"
            self.ring = None
            self.m = matrix.bond(0, 1)
            self._identity = Element((False, 0), 0)
        else:
            self.backend = "matrix"
            bonds = {
                matrix.bond(i, j)
                for i in range(self.rank)
                for j in range(i + 1, self.rank)
            }
            unsupported = bonds - _SUPPORTED_RING_BONDS
            if unsupported:
                raise UnsupportedLabel(
                    f"bond orders {sorted(unsupported)} exceed the supported exact rings"
                )
            self.ring = SQRT2 if 4 in bonds else INT
            self.m = None
            self._build_matrices()
        self._check_relations()

    # -- construction helpers -------------------------------------------

    def _build_matrices(self):
        ring = self.ring
        n = self.rank
        self._coeff = [
            [
                ring.zero if i == j else _cos_coeff(ring, self.matrix.bond(i, j))
                for j in range(n)
            ]
            for i in range(n)
        ]
        self._adj = [
            tuple(
                j
                for j in range(n)
                if j != i and ring.sign(self._coeff[i][j]) != 0
            )
            for i in range(n)
        ]
        ident = tuple(
            tuple(ring.one if a == b else ring.zero for a in range(n))
            for b in range(n)
        )
        self._identity = Element(ident, 0)

    def _check_relations(self):
        for i in range(self.rank):
            sq = self.multiply(self.generator(i), self.generator(i))
            if sq.data != self._identity.data:
                raise InvalidMatrix(f"generator {i} is not an involution")
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                m = self.matrix.bond(i, j)
                if m == INFINITE:
                    continue
                prod = self.multiply(self.generator(i), self.generator(j))
                power = prod
                for t in range(1, m + 1):
                    is_id = power.data == self._identity.data
                    if t < m and is_id:
                        raise InvalidMatrix(
                            f"(s{i}s{j}) has order < m({i},{j}) = {m}"
                        )
                    if t == m and not is_id:
                        raise InvalidMatrix(
                            f"(s{i}s{j}) does not have order m({i},{j}) = {m}"
                        )
                    if t < m:
                        power = self.multiply(power, prod)

    # -- naming -----------------------------------------------------------

    def generator_name(self, i: int) -> str:
        return f"s{i + self.index_base}"

    def generator_index(self, name: str) -> int:
        if not name.startswith("s"):
            raise IndexOutOfRange(f"bad generator name {name!r}")
        i = int(name[1:]) - self.index_base
        self._check_index(i)
        return i

    def _check_index(self, i: int):
        if not 0 <= i < self.rank:
            raise IndexOutOfRange(f"generator index {i} out of range for {self.label}")

    # -- element primitives ------------------------------------------------

    def identity(self) -> Element:
        return self._identity

    def generator(self, i: int) -> Element:
        self._check_index(i)
        return Element(self._apply_right(self._identity.data, i), 1)

    def is_identity(self, w: Element) -> bool:
        return w.data == self._identity.data

    def _apply_right(self, data, i):
        if self.backend == "dihedral":
            refl, k = data
            if i == 0:
                refl, k = (not refl), k
            else:
                refl, k = (not refl), (k + 1 if refl else k - 1)
            if self.m != INFINITE:
                k %= self.m
            return (refl, k)
        ring = self.ring
        cols = list(data)
        col_i = cols[i]
        for j in self._adj[i]:
            c = self._coeff[i][j]
            cols[j] = tuple(
                ring.add(x, ring.mul(c, y)) for x, y in zip(cols[j], col_i)
            )
        cols[i] = tuple(ring.neg(x) for x in col_i)
        return tuple(cols)

    def _apply_left(self, data, i):
        if self.backend == "dihedral":
            refl, k = data
            if i == 0:
                refl, k = (not refl), -k
            else:
                refl, k = (not refl), -k - 1
            if self.m != INFINITE:
                k %= self.m
            return (refl, k)
        ring = self.ring
        out = []
        for col in data:
            acc = ring.neg(col[i])
            for j in self._adj[i]:
                acc = ring.add(acc, ring.mul(self._coeff[i][j], col[j]))
            newcol = list(col)
            newcol[i] = acc
            out.append(tuple(newcol))
        return tuple(out)

    def _is_right_descent_data(self, data, i) -> bool:
        if self.backend == "dihedral":
            return self._dihedral_length(self._apply_right(data, i)) < self._dihedral_length(data)
        # w(alpha_i) is w's i-th column; descent iff it is a negative root
        for entry in data[i]:
            if self.ring.sign(entry) > 0:
                return False
        return True

    def is_right_descent(self, w: Element, i: int) -> bool:
        self._check_index(i)
        return self._is_right_descent_data(w.data, i)

    def _dihedral_length(self, data) -> int:
        refl, k = data
        if self.m == INFINITE:
            if refl:
                return 2 * k + 1 if k >= 0 else -2 * k - 1
            return 2 * abs(k)
        k %= self.m
        if refl:
            return min(2 * k + 1, 2 * (self.m - k) - 1)
        return min(2 * k, 2 * (self.m - k))

    def _length_of_data(self, data) -> int:
        if self.backend == "dihedral":
            return self._dihedral_length(data)
        steps = 0
        while data != self._identity.data:
            for i in range(self.rank):
                if self._is_right_descent_data(data, i):
                    data = self._apply_right(data, i)
                    steps += 1
                    break
            else:
                raise RuntimeError("non-identity element without right descent")
        return steps

    # -- compound operations ------------------------------------------------

    def apply(self, w: Element, i: int, side: str = "right") -> Element:
        self._check_index(i)
        if side == "right":
            down = self._is_right_descent_data(w.data, i)
            data = self._apply_right(w.data, i)
            return Element(data, w.length - 1 if down else w.length + 1)
        if side == "left":
            data = self._apply_left(w.data, i)
            if self.backend == "dihedral":
                return Element(data, self._dihedral_length(data))
            return Element(data, self._length_of_data(data))
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def multiply(self, a: Element, b: Element) -> Element:
        if self.backend == "dihedral":
            r1, k1 = a.data
            r2, k2 = b.data
            k = k1 + (-k2 if r1 else k2)
            if self.m != INFINITE:
                k %= self.m
            data = (r1 != r2, k)
            return Element(data, self._dihedral_length(data))
        ring = self.ring
        acols, bcols = a.data, b.data
        n = self.rank
        out = []
        for j in range(n):
            col = [ring.zero] * n
            for k2, coeff in enumerate(bcols[j]):
                if ring.sign(coeff) != 0:
                    acol = acols[k2]
                    col = [ring.add(x, ring.mul(coeff, y)) for x, y in zip(col, acol)]
            out.append(tuple(col))
        data = tuple(out)
        return Element(data, self._length_of_data(data))

    def inverse(self, w: Element) -> Element:
        if self.backend == "dihedral":
            refl, k = w.data
            data = w.data if refl else ((False, -k % self.m) if self.m != INFINITE else (False, -k))
            return Element(data, w.length)
        data = w.data
        inv = self._identity.data
        while data != self._identity.data:
            for i in range(self.rank):
                if self._is_right_descent_data(data, i):
                    data = self._apply_right(data, i)
                    inv = self._apply_right(inv, i)
                    break
        return Element(inv, w.length)

    def assemble(self, word: Iterable[int]) -> Element:
        w = self._identity
        for i in word:
            w = self.apply(w, i, "right")
        return w

    def shortlex(self, w: Element) -> Word:
        """Lexicographically least reduced word under s0 < s1 < ... order."""
        if self.backend == "dihedral":
            return self._dihedral_shortlex(w.data)
        winv = self.inverse(w).data
        data = w.data
        out = []
        for _ in range(w.length):
            for i in range(self.rank):
                # left descents of w are right descents of w^{-1}
                if self._is_right_descent_data(winv, i):
                    out.append(i)
                    data = self._apply_left(data, i)
                    winv = self._apply_right(winv, i)
                    break
            else:
                raise RuntimeError("length/descent mismatch in shortlex")
        if data != self._identity.data:
            raise RuntimeError("shortlex did not reach the identity")
        return tuple(out)

    def _dihedral_shortlex(self, data) -> Word:
        refl, k = data
        if self.m == INFINITE:
            if refl:
                start, n = (0, 2 * k + 1) if k >= 0 else (1, -2 * k - 1)
            else:
                if k == 0:
                    return ()
                start, n = (0, 2 * k) if k > 0 else (1, -2 * k)
        else:
            k %= self.m
            if refl:
                la, lb = 2 * k + 1, 2 * (self.m - k) - 1
            else:
                if k == 0:
                    return ()
                la, lb = 2 * k, 2 * (self.m - k)
            start, n = (0, la) if la <= lb else (1, lb)
        return tuple((start + t) % 2 for t in range(n))

    def right_descent_set(self, w: Element) -> frozenset:
        return frozenset(
            i for i in range(self.rank) if self._is_right_descent_data(w.data, i)
        )


# ---------------------------------------------------------------------------
# registry of group labels


def _chain_matrix(rank: int, edges: dict) -> CoxeterMatrix:
    rows = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
    for (i, j), m in edges.items():
        rows[i][j] = m
        rows[j][i] = m
    return CoxeterMatrix(tuple(tuple(r) for r in rows))


def _finite_matrix(family: str, n: int) -> CoxeterMatrix:
    if family == "A":
        edges = {(i, i + 1): 3 for i in range(n - 1)}
        return _chain_matrix(n, edges)
    if family == "B":
        edges = {(i, i + 1): 3 for i in range(n - 2)}
        edges[(n - 2, n - 1)] = 4
        return _chain_matrix(n, edges)
    if family == "D":
        edges = {(i, i + 1): 3 for i in range(n - 3)}
        edges[(n - 3, n - 2)] = 3
        edges[(n - 3, n - 1)] = 3
        return _chain_matrix(n, edges)
    raise UnsupportedLabel(family)


def _affine_matrix(family: str, n: int) -> CoxeterMatrix:
    rank = n + 1
    if family == "A":
        edges = {(i, (i + 1) % rank): 3 for i in range(rank)}
        return _chain_matrix(rank, edges)
    if family == "B":
        edges = {(0, 1): 4}
        edges.update({(i, i + 1): 3 for i in range(1, n - 1)})
        edges[(n - 2, n)] = 3
        return _chain_matrix(rank, edges)
    if family == "C":
        edges = {(0, 1): 4, (n - 1, n): 4}
        edges.update({(i, i + 1): 3 for i in range(1, n - 1)})
        return _chain_matrix(rank, edges)
    if family == "D":
        edges = {(0, 2): 3, (1, 2): 3, (n - 2, n - 1): 3, (n - 2, n): 3}
        edges.update({(i, i + 1): 3 for i in range(2, n - 2)})
        return _chain_matrix(rank, edges)
    raise UnsupportedLabel(family)


def build_system(label_or_matrix) -> CoxeterSystem:
    """Construct a registered system from a label, or from a CoxeterMatrix.

    >>> build_system("A3").rank
    3
    >>> build_system("I2(4)").backend
    'dihedral'
    >>> build_system("affine-C2").matrix.entries
    ((1, 4, 2), (4, 1, 4), (2, 4, 1))
    """
    if isinstance(label_or_matrix, CoxeterMatrix):
        return CoxeterSystem(f"custom(rank={label_or_matrix.rank})", label_or_matrix, 1)
    label = label_or_matrix
    if not isinstance(label, str):
        raise UnsupportedLabel(f"expected a label or CoxeterMatrix, got {label!r}")

    if label.startswith("I2(") and label.endswith(")"):
        m = int(label[3:-1])
        if m < 3:
            raise UnsupportedLabel(f"I2({m}) requires bond order >= 3")
        return CoxeterSystem(label, _chain_matrix(2, {(0, 1): m}), 1)

    affine = label.startswith("affine-")
    body = label[len("affine-"):] if affine else label
    if len(body) < 2 or body[0] not in "ABCD":
        raise UnsupportedLabel(f"unknown label {label!r}")
    family, n = body[0], int(body[1:])

    if affine:
        floors = {"A": 1, "B": 3, "C": 2, "D": 4}
        if n < floors[family]:
            raise UnsupportedLabel(f"{label} below the minimal rank for its family")
        if family == "A" and n == 1:
            return CoxeterSystem(label, _chain_matrix(2, {(0, 1): INFINITE}), 0)
        return CoxeterSystem(label, _affine_matrix(family, n), 0)

    floors = {"A": 1, "B": 2, "C": None, "D": 3}
    if family == "C":
        raise UnsupportedLabel("finite type C coincides with B; use the B label")
    if n < floors[family]:
        raise UnsupportedLabel(f"{label} below the minimal rank for its family")
    if family == "B" and n == 2:
        return CoxeterSystem(label, _chain_matrix(2, {(0, 1): 4}), 1)
    return CoxeterSystem(label, _finite_matrix(family, n), 1)


# ---------------------------------------------------------------------------
# module-level operations


def apply_generator(system: CoxeterSystem, w: Element, i: int, side: str = "right") -> Element:
    """Multiply by a generator on the chosen side; length moves by +/-1."""
    return system.apply(w, i, side)


def length(system: CoxeterSystem, w: Element) -> int:
    return w.length


def right_descents(system: CoxeterSystem, w: Element) -> frozenset:
    return system.right_descent_set(w)


def shortlex_normal_form(system: CoxeterSystem, w: Element) -> Word:
    return system.shortlex(w)


def element_from_word(system: CoxeterSystem, word: Iterable[int]) -> Element:
    return system.assemble(word)


def multiply(system: CoxeterSystem, a: Element, b: Element) -> Element:
    return system.multiply(a, b)


def inverse(system: CoxeterSystem, w: Element) -> Element:
    return system.inverse(w)


def word_string(system: CoxeterSystem, word: Sequence[int]) -> str:
    """Render a word using generator names; the empty word is ``e``."""
    if not word:
        return "e"
    return " ".join(system.generator_name(i) for i in word)


def _split_chunks(items, workers):
    if workers <= 1 or len(items) <= 1:
        return [items]
    size = (len(items) + workers - 1) // workers
    return [items[t : t + size] for t in range(0, len(items), size)]


def _bfs_layers(
    system: CoxeterSystem,
    max_len: Optional[int],
    budget: int,
    workers: int,
    with_words: bool,
    gens: Optional[Sequence[int]] = None,
):
    """Yield (length, sorted [(key/data, word?)]) layer by layer.

    Layer expansion may run in worker chunks; each layer is merged and
    sorted by canonical key before being yielded, so the stream does not
    depend on the worker count.  Candidate elements at length k+1 can
    only collide with layer k-1 (the Cayley graph is bipartite by length
    parity), so two layers of keys suffice for deduplication.  A ``gens``
    subset restricts the walk to a standard parabolic subgroup, in which
    word length agrees with ambient length.
    """
    gens = tuple(range(system.rank)) if gens is None else tuple(sorted(set(gens)))
    ident = system.identity().data
    cur = {ident: () if with_words else None}
    prev: dict = {}
    stored = 1
    if stored > budget:
        raise ResourceLimit(budget)
    yield 0, sorted(cur.items())
    k = 0
    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while cur and (max_len is None or k < max_len):
            items = sorted(cur.items())

            def expand(chunk):
                # the same element may surface in several chunks; the
                # merge below keeps the lexicographically least word
                local = {}
                for data, word in chunk:
                    for i in gens:
                        nd = system._apply_right(data, i)
                        if nd in prev or nd in cur:
                            continue
                        if with_words:
                            cand = word + (i,)
                            old = local.get(nd)
                            if old is None or cand < old:
                                local[nd] = cand
                        else:
                            local[nd] = None
                return local

            chunks = _split_chunks(items, workers)
            if executor is not None and len(chunks) > 1:
                locals_ = list(executor.map(expand, chunks))
            else:
                locals_ = [expand(c) for c in chunks]
            nxt: dict = {}
            for local in locals_:
                for nd, word in local.items():
                    if with_words:
                        old = nxt.get(nd)
                        if old is None or word < old:
                            nxt[nd] = word
                    else:
                        nxt[nd] = None
            stored += len(nxt)
            if stored > budget:
                raise ResourceLimit(budget)
            prev, cur = cur, nxt
            k += 1
            if cur:
                yield k, sorted(cur.items())
    finally:
        if executor is not None:
            executor.shutdown(wait=False)


def enumerate_up_to(
    system: CoxeterSystem,
    max_len: Optional[int],
    *,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[Tuple[Element, int]]:
    """Stream every element of length <= max_len exactly once.

    Elements are emitted in increasing length, sorted by canonical key
    within each length; lengths are the BFS layer indices.  With
    ``max_len=None`` the whole group is enumerated (the budget guards
    against accidentally unbounded runs on affine systems).
    """
    for k, layer in _bfs_layers(system, max_len, budget, workers, with_words=False):
        for data, _ in layer:
            yield Element(data, k), k


def enumerate_with_words(
    system: CoxeterSystem,
    max_len: Optional[int],
    *,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[Tuple[Element, Word]]:
    """Like enumerate_up_to but also yields each element's ShortLex word."""
    for k, layer in _bfs_layers(system, max_len, budget, workers, with_words=True):
        for data, word in layer:
            yield Element(data, k), word


def enumerate_parabolic(
    system: CoxeterSystem,
    J: Iterable[int],
    max_len: Optional[int],
    *,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[Tuple[Element, int]]:
    """Stream the standard parabolic subgroup on J up to the cutoff.

    Parabolic lengths agree with ambient lengths, so the layer index is
    the ambient length of each element.
    """
    J = sorted(set(J))
    for j in J:
        system._check_index(j)
    for k, layer in _bfs_layers(system, max_len, budget, workers, with_words=False, gens=J):
        for data, _ in layer:
            yield Element(data, k), k


def all_reduced_words(system: CoxeterSystem, w: Element) -> list:
    """All reduced words of w (exponential; intended for short elements)."""
    if system.is_identity(w):
        return [()]
    out = []
    for i in range(system.rank):
        if system._is_right_descent_data(w.data, i):
            for word in all_reduced_words(system, system.apply(w, i, "right")):
                out.append(word + (i,))
    return out


def parabolic_decompose(
    system: CoxeterSystem, w: Element, J: Iterable[int]
) -> Tuple[Element, Element]:
    """Split w = w^J * w_J with w^J coset-minimal and lengths adding.

    w^J has no right descent inside J; w_J lies in the parabolic on J.
    """
    J = sorted(set(J))
    for j in J:
        system._check_index(j)
    v = w
    letters = []
    while True:
        for j in J:
            if system._is_right_descent_data(v.data, j):
                v = system.apply(v, j, "right")
                letters.append(j)
                break
        else:
            break
    w_j = system.assemble(tuple(reversed(letters)))
    return v, w_j


def minimal_coset_reps(
    system: CoxeterSystem,
    J: Iterable[int],
    max_len: Optional[int],
    *,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[Element]:
    """Stream the minimal coset representatives W^J of length <= max_len.

    W^J is closed under left weak descents, so a breadth-first search by
    left multiplication starting at the identity reaches all of it; each
    candidate is kept only if it has no right descent in J.
    """
    J = sorted(set(J))
    for j in J:
        system._check_index(j)
    ident = system.identity().data
    cur = {ident}
    prev: set = set()
    stored = 1
    k = 0
    yield system.identity()
    while cur and (max_len is None or k < max_len):
        nxt = set()
        for data in cur:
            for i in range(system.rank):
                nd = system._apply_left(data, i)
                if nd in prev or nd in cur or nd in nxt:
                    continue
                if any(system._is_right_descent_data(nd, j) for j in J):
                    continue
                nxt.add(nd)
        stored += len(nxt)
        if stored > budget:
            raise ResourceLimit(budget)
        prev, cur = cur, nxt
        k += 1
        for data in sorted(cur):
            yield Element(data, k)


def bruhat_leq(system: CoxeterSystem, v: Element, w: Element) -> bool:
    """Bruhat order test v <= w.

    Uses the subword characterization: v <= w iff some (equivalently,
    every) reduced word of w contains a reduced word of v as a subword.
    The scan below folds v through one fixed reduced word of w from the
    right, descending whenever possible; by the lifting property this
    reaches the identity exactly when v <= w.
    """
    if v.length > w.length:
        return False
    word = system.shortlex(w)
    u = v
    for i in reversed(word):
        if system._is_right_descent_data(u.data, i):
            u = system.apply(u, i, "right")
    return system.is_identity(u)


if __name__ == "__main__":
    import doctest

    doctest.testmod()
