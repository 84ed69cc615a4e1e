"""Integer-lattice algebra over Z^n.

Everything here is exact integer (or rational) arithmetic on tuples of
Python ints, so there is no overflow to worry about: the marker distance
``d`` produced by :func:`compute_constants` easily exceeds 64 bits for
large generating sets.

The central objects are symmetric generating sets of Z^n and their
greedy decomposition into layers, where each layer is a maximal
"independent" subset of what remains.  A symmetric set S is independent
when for every s in S the cyclic group <s> meets <S \\ {s,-s}> only in
the zero vector; for torsion-free Z^n this is equivalent to the lex
positive representatives of the +/- pairs being linearly independent
over Q, which is how :func:`is_linearly_independent` decides it (a
rational dependence scales to an integer relation and conversely).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InvalidInputError

Vector = tuple[int, ...]


# ---------------------------------------------------------------------------
# elementary vector helpers
# ---------------------------------------------------------------------------

def vneg(v: Vector) -> Vector:
    return tuple(-x for x in v)


def vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vscale(k: int, v: Vector) -> Vector:
    return tuple(k * x for x in v)


def is_lex_positive(v: Vector) -> bool:
    """True when the first nonzero coordinate is positive."""
    for x in v:
        if x:
            return x > 0
    return False


def canonical_rep(v: Vector) -> Vector:
    """Lex positive representative of the pair {v, -v}."""
    return v if is_lex_positive(v) else vneg(v)


def one_norm(v: Vector) -> int:
    return sum(abs(x) for x in v)


# ---------------------------------------------------------------------------
# Hermite normal form and lattice queries
# ---------------------------------------------------------------------------

def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _pivot_col(row: Sequence[int]) -> int:
    for i, x in enumerate(row):
        if x:
            return i
    return -1


def hermite_normal_form(rows: Iterable[Sequence[int]]) -> list[Vector]:
    """Row-style HNF of the lattice spanned by ``rows``.

    The result is canonical: rows sorted by pivot column, pivots
    positive, entries above each pivot reduced into [0, pivot).  The
    spanned lattice is unchanged, and the map is idempotent.
    """
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return []
    width = len(mat[0])
    if any(len(r) != width for r in mat):
        raise InvalidInputError("rows of differing length in lattice basis")

    by_pivot: dict[int, list[int]] = {}
    for incoming in mat:
        v = incoming
        while True:
            c = _pivot_col(v)
            if c < 0:
                break
            if c not in by_pivot:
                if v[c] < 0:
                    v = [-x for x in v]
                by_pivot[c] = v
                break
            u = by_pivot[c]
            g, x, y = _ext_gcd(u[c], v[c])
            uc, vc = u[c] // g, v[c] // g
            by_pivot[c] = [x * a + y * b for a, b in zip(u, v)]
            v = [uc * b - vc * a for a, b in zip(u, v)]

    basis = [by_pivot[c] for c in sorted(by_pivot)]
    # reduce entries above each pivot
    for j in range(len(basis)):
        cj = _pivot_col(basis[j])
        pj = basis[j][cj]
        for i in range(j):
            q = basis[i][cj] // pj
            if q:
                basis[i] = [a - q * b for a, b in zip(basis[i], basis[j])]
    return [tuple(r) for r in basis]


def lattice_rank(rows: Iterable[Sequence[int]]) -> int:
    """Rank over Q of the span of ``rows`` (= rank of the lattice)."""
    return len(hermite_normal_form(rows))


def lattice_contains(v: Sequence[int], hnf_rows: Sequence[Vector]) -> bool:
    """Membership of v in the lattice given by canonical HNF rows."""
    w = list(v)
    for row in hnf_rows:
        c = _pivot_col(row)
        if w[c]:
            q, rem = divmod(w[c], row[c])
            if rem:
                return False
            w = [a - q * b for a, b in zip(w, row)]
    return not any(w)


def rational_coordinates(
    v: Sequence[int], hnf_rows: Sequence[Vector]
) -> Optional[list[Fraction]]:
    """Coordinates of v w.r.t. HNF rows over Q, or None if outside the span."""
    w = [Fraction(x) for x in v]
    coords = []
    for row in hnf_rows:
        c = _pivot_col(row)
        q = w[c] / row[c]
        coords.append(q)
        if q:
            w = [a - q * b for a, b in zip(w, row)]
    if any(w):
        return None
    return coords


def solve_integer_combination(
    vectors: Sequence[Vector], target: Vector
) -> Optional[tuple[int, ...]]:
    """Solve target = sum a_j * vectors[j] exactly over Z.

    Returns None when no rational solution exists or the rational
    solution is not integral.  The vectors are assumed independent over
    Q, so the solution (if any) is unique.
    """
    m = len(vectors)
    n = len(target)
    # augmented system, one equation per ambient coordinate
    rows = [[Fraction(vectors[j][r]) for j in range(m)] + [Fraction(target[r])]
            for r in range(n)]
    piv_rows: list[int] = []
    r_used = [False] * n
    for col in range(m):
        sel = None
        for r in range(n):
            if not r_used[r] and rows[r][col]:
                sel = r
                break
        if sel is None:
            return None  # vectors were not independent
        r_used[sel] = True
        piv_rows.append(sel)
        pivot = rows[sel][col]
        for r in range(n):
            if r != sel and rows[r][col]:
                f = rows[r][col] / pivot
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[sel])]
    # consistency of the remaining equations
    for r in range(n):
        if not r_used[r] and rows[r][m]:
            return None
    sol = []
    for col, r in enumerate(piv_rows):
        q = rows[r][m] / rows[r][col]
        if q.denominator != 1:
            return None
        sol.append(int(q))
    return tuple(sol)


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Basis of {x in Z^ncols : M x = 0} for the matrix M given by ``rows``.

    Uses the classic augmented-HNF trick: row reduce [M^T | I]; rows of
    the result whose M^T block vanished have identity blocks spanning
    the kernel lattice.
    """
    m = len(rows)
    aug = []
    for j in range(ncols):
        left = [rows[i][j] for i in range(m)]
        right = [1 if t == j else 0 for t in range(ncols)]
        aug.append(left + right)
    reduced = hermite_normal_form(aug)
    kernel = [row[m:] for row in reduced if not any(row[:m])]
    return [tuple(r) for r in kernel]


@dataclass(frozen=True)
class SubgroupBasis:
    """A subgroup of Z^n held in canonical (row HNF) form."""

    dimension: int
    basis: tuple[Vector, ...]

    @classmethod
    def from_vectors(cls, dimension: int, vectors: Iterable[Vector]) -> "SubgroupBasis":
        vecs = list(vectors)
        for v in vecs:
            if len(v) != dimension:
                raise InvalidInputError("vector dimension mismatch in subgroup basis")
        return cls(dimension, tuple(hermite_normal_form(vecs)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Vector) -> bool:
        return lattice_contains(v, self.basis)

    def is_full_integer_lattice(self) -> bool:
        if self.rank != self.dimension:
            return False
        ident = tuple(
            tuple(1 if i == j else 0 for j in range(self.dimension))
            for i in range(self.dimension)
        )
        return self.basis == ident


def smallest_multiple_in(v: Vector, subgroup: SubgroupBasis) -> int:
    """Least k > 0 with k*v in the subgroup.

    Requires v to lie in the rational span of the subgroup; a violation
    indicates a broken layer decomposition upstream, so it raises.
    """
    coords = rational_coordinates(v, subgroup.basis)
    if coords is None:
        raise ValueError(f"{v} lies outside the rational span of the subgroup")
    k = 1
    for c in coords:
        k = k * c.denominator // math.gcd(k, c.denominator)
    return k


# ---------------------------------------------------------------------------
# generating sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorSet:
    """A finite symmetric subset of Z^n not containing the identity."""

    dimension: int
    members: frozenset[Vector]

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise InvalidInputError("dimension must be >= 1")
        for v in self.members:
            if len(v) != self.dimension:
                raise InvalidInputError(f"member {v} has wrong dimension")
            if not any(v):
                raise InvalidInputError("identity element not allowed in a generating set")
            if vneg(v) not in self.members:
                raise InvalidInputError(f"set is not symmetric: missing {vneg(v)}")

    @classmethod
    def from_vectors(
        cls, vectors: Iterable[Sequence[int]], *, symmetrize: bool = True
    ) -> "GeneratorSet":
        vecs = [tuple(int(x) for x in v) for v in vectors]
        if not vecs:
            raise InvalidInputError("empty generating set")
        dim = len(vecs[0])
        members = set(vecs)
        closure = members | {vneg(v) for v in members}
        if not symmetrize and closure != members:
            raise InvalidInputError("input set is not symmetric and symmetrization is off")
        return cls(dim, frozenset(closure))

    @classmethod
    def standard(cls, n: int) -> "GeneratorSet":
        units = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        return cls.from_vectors(units)

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def pairs(self) -> list[Vector]:
        """Lex positive representatives of the +/- pairs, sorted lexicographically."""
        return sorted({canonical_rep(v) for v in self.members})

    def subgroup(self) -> SubgroupBasis:
        return SubgroupBasis.from_vectors(self.dimension, self.pairs())

    def generates_full_lattice(self) -> bool:
        return self.subgroup().is_full_integer_lattice()


def is_linearly_independent(s: GeneratorSet | Iterable[Vector]) -> bool:
    """The independence test used when layering a generating set.

    Equivalent to: for every s in S, <s> meets <S minus the pair of s>
    only at zero.  Each +/- pair must contribute one unit of rational
    rank beyond the rest.
    """
    if isinstance(s, GeneratorSet):
        reps = s.pairs()
    else:
        reps = sorted({canonical_rep(tuple(v)) for v in s})
    if not reps:
        return True
    widths = {len(v) for v in reps}
    if len(widths) != 1:
        raise InvalidInputError("dimension mismatch among members")
    return lattice_rank(reps) == len(reps)


# ---------------------------------------------------------------------------
# decomposition into layers and the derived constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """Layering S = S_0 u ... u S_m plus the constants driving colorings.

    ``k[i-1]`` is the least k > 0 with k*<S_i> inside <S_{i-1}>.  The
    remaining fields are only populated by :func:`compute_constants`:

    * ``beta * s`` lies in <S_i> for every level i, and ``a_coeffs[i]``
      are its exact integer coordinates in the ordered basis of layer i.
      They are always even: beta*s = 2*(3*prod(k)*s) and 3*prod(k)*s is
      itself a member of <S_i> by the divisibility chain through the
      k's, so each coordinate doubles an integer.
    * ``d`` = 8*(gamma+1)*(alpha+1)*(beta+1)*|s| + 2, hence always
      congruent to 2 mod 4.
    """

    dimension: int
    layers: tuple[GeneratorSet, ...]
    k: tuple[int, ...]
    alpha: Optional[int] = None
    beta: Optional[int] = None
    gamma: Optional[int] = None
    s: Optional[Vector] = None
    s_norm: Optional[int] = None
    d: Optional[int] = None
    a_coeffs: Optional[dict[int, tuple[int, ...]]] = None

    @property
    def level_count(self) -> int:
        """m, the index of the last layer."""
        return len(self.layers) - 1

    def layer_reps(self, i: int) -> list[Vector]:
        """Ordered basis of layer i (lex order, which is insertion order)."""
        return self.layers[i].pairs()

    def layer_subgroup(self, i: int) -> SubgroupBasis:
        return self.layers[i].subgroup()


def decompose(s: GeneratorSet) -> Decomposition:
    """Greedy deterministic layering of a generating set of Z^n.

    Pairs are scanned in lex order of their canonical representative; a
    pair joins the current layer when the layer stays independent.  Each
    layer is maximal before the next one starts, so every leftover pair
    is rationally dependent on every completed layer.
    """
    if not s.generates_full_lattice():
        raise InvalidInputError(
            "generating set does not generate Z^n (HNF is not the identity lattice)"
        )
    remaining = s.pairs()
    layers: list[GeneratorSet] = []
    while remaining:
        layer: list[Vector] = []
        deferred: list[Vector] = []
        for v in remaining:
            if lattice_rank(layer + [v]) == len(layer) + 1:
                layer.append(v)
            else:
                deferred.append(v)
        layers.append(GeneratorSet.from_vectors(layer))
        remaining = deferred
    assert len(layers[0].pairs()) == s.dimension, "first layer must have rank n"

    ks: list[int] = []
    for i in range(1, len(layers)):
        prev = layers[i - 1].subgroup()
        k_i = 1
        for v in layers[i].pairs():
            kv = smallest_multiple_in(v, prev)
            k_i = k_i * kv // math.gcd(k_i, kv)
        ks.append(k_i)
    return Decomposition(s.dimension, tuple(layers), tuple(ks))


def compute_constants(dec: Decomposition) -> Decomposition:
    """Fill in alpha, beta, gamma, s, d and the shift coordinates.

    s is the lex smallest canonical representative in the last layer.
    For m = 0 the constants degenerate to alpha=0, beta=6, gamma=0 so
    downstream code keeps a single path.
    """
    n = dec.dimension
    m = dec.level_count
    beta = 6
    for k_i in dec.k:
        beta *= k_i
    alpha = (3 ** n) * m
    s = dec.layer_reps(m)[0]
    s_norm = one_norm(s)

    beta_s = vscale(beta, s)
    a_coeffs: dict[int, tuple[int, ...]] = {}
    for i in range(m + 1):
        reps = dec.layer_reps(i)
        sol = solve_integer_combination(reps, beta_s)
        if sol is None:
            raise ValueError(
                f"no integer expansion of beta*s in layer {i}: decomposition invariant broken"
            )
        assert all(a % 2 == 0 for a in sol), "beta*s coordinates must all be even"
        a_coeffs[i] = sol

    gamma = 0
    for i in range(1, m + 1):
        for a in a_coeffs[i]:
            gamma = max(gamma, abs(a))

    d = 4 * 2 * (gamma + 1) * (alpha + 1) * (beta + 1) * s_norm + 2
    assert d % 4 == 2
    return replace(
        dec,
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        s=s,
        s_norm=s_norm,
        d=d,
        a_coeffs=a_coeffs,
    )


def decompose_with_constants(s: GeneratorSet) -> Decomposition:
    return compute_constants(decompose(s))


# ---------------------------------------------------------------------------
# textual input format
# ---------------------------------------------------------------------------

def parse_generator_text(text: str, *, symmetrize: bool = True) -> GeneratorSet:
    """Parse the generating-set format.

    First non-blank line is ``n=<dim>``; every further non-blank,
    non-comment line is one vector of comma separated integers.  Only
    one of v, -v needs to be listed; with ``symmetrize=False`` an input
    that is not already closed under negation is rejected.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].replace(" ", "").startswith("n="):
        raise InvalidInputError("generating-set file must start with 'n=<dim>'")
    try:
        dim = int(lines[0].split("=", 1)[1])
    except ValueError as exc:
        raise InvalidInputError(f"bad dimension line: {lines[0]!r}") from exc
    vectors = []
    for ln in lines[1:]:
        try:
            vec = tuple(int(part) for part in ln.split(","))
        except ValueError as exc:
            raise InvalidInputError(f"bad vector line: {ln!r}") from exc
        if len(vec) != dim:
            raise InvalidInputError(f"vector {vec} does not have dimension {dim}")
        vectors.append(vec)
    if not vectors:
        raise InvalidInputError("no vectors in generating-set file")
    return GeneratorSet.from_vectors(vectors, symmetrize=symmetrize)


def load_generator_file(path: str, *, symmetrize: bool = True) -> GeneratorSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_generator_text(fh.read(), symmetrize=symmetrize)
