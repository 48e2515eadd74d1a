"""Lagrangian subspaces of symplectic F_2-spaces fixed by a 2-group.

Vectors are int bitmasks (coordinate i is bit i).  A matrix is stored as the
tuple of its column bitmasks, so g*v is the XOR of the columns picked out by v.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

CLOSURE_BOUND = 1 << 20


class NotATwoGroup(ValueError):
    pass


class ClosureBoundExceeded(RuntimeError):
    pass


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def apply(cols: tuple[int, ...], v: int) -> int:
    out, i = 0, 0
    while v:
        if v & 1:
            out ^= cols[i]
        v >>= 1
        i += 1
    return out


def compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Columns of a*b."""
    return tuple(apply(a, col) for col in b)


def identity(dim: int) -> tuple[int, ...]:
    return tuple(1 << i for i in range(dim))


def rows_to_cols(rows: list[list[int]]) -> tuple[int, ...]:
    dim = len(rows)
    return tuple(sum(rows[i][j] << i for i in range(dim)) for j in range(dim))


def cols_to_rows(cols: tuple[int, ...]) -> list[list[int]]:
    dim = len(cols)
    return [[(cols[j] >> i) & 1 for j in range(dim)] for i in range(dim)]


def rank_f2(vectors) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def standard_gram(n: int) -> tuple[int, ...]:
    """Pairing with <e_i, f_i> = 1 where e_i = bit i and f_i = bit n + i."""
    cols = [0] * (2 * n)
    for i in range(n):
        cols[i] |= 1 << (n + i)
        cols[n + i] |= 1 << i
    return tuple(cols)


@dataclass(frozen=True)
class SymplecticSpaceF2:
    n: int
    gram: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        dim = 2 * self.n
        if len(self.gram) != dim:
            raise ValueError("Gram matrix has the wrong size")
        rows = cols_to_rows(self.gram)
        for i in range(dim):
            if rows[i][i]:
                raise ValueError("Gram matrix is not alternating")
            for j in range(dim):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("Gram matrix is not alternating")
        if rank_f2(self.gram) != dim:
            raise ValueError("Gram matrix is singular")
        for g in self.generators:
            if len(g) != dim:
                raise ValueError("generator has the wrong size")
            for i in range(dim):
                for j in range(i + 1, dim):
                    if self.pair(g[i], g[j]) != self.pair(1 << i, 1 << j):
                        raise ValueError("generator does not preserve the pairing")

    @property
    def dim(self) -> int:
        return 2 * self.n

    def pair(self, u: int, v: int) -> int:
        return _parity(u & apply(self.gram, v))

    def group(self, bound: int = CLOSURE_BOUND) -> set[tuple[int, ...]]:
        one = identity(self.dim)
        seen = {one}
        frontier = [one]
        while frontier:
            nxt = []
            for h in frontier:
                for g in self.generators:
                    x = compose(g, h)
                    if x not in seen:
                        seen.add(x)
                        if len(seen) > bound:
                            raise ClosureBoundExceeded(f"group has more than {bound} elements")
                        nxt.append(x)
            frontier = nxt
        return seen

    def check_two_group(self, bound: int = CLOSURE_BOUND) -> int:
        order = len(self.group(bound))
        if order & (order - 1):
            raise NotATwoGroup(f"group order {order} is not a power of 2")
        return order


def _span(basis: list[int]) -> set[int]:
    out = {0}
    for b in basis:
        out |= {x ^ b for x in out}
    return out


def invariant_lagrangian(space: SymplecticSpaceF2, check: bool = True) -> list[int]:
    """Basis of an n-dimensional isotropic subspace fixed by every generator.

    Starting from W = 0, repeatedly add the smallest (as an integer) vector v
    of W-perp outside W with g(v) - v in W for every generator g.
    """
    if check:
        space.check_two_group()
    basis: list[int] = []
    W = {0}
    for _ in range(space.n):
        for v in range(1, 1 << space.dim):
            if v in W or any(space.pair(v, b) for b in basis):
                continue
            if all((apply(g, v) ^ v) in W for g in space.generators):
                break
        else:
            raise AssertionError("no fixed vector in W-perp/W; the group is not a 2-group")
        basis.append(v)
        W = _span(basis)
    return basis


def is_invariant_lagrangian(space: SymplecticSpaceF2, basis: list[int]) -> bool:
    if rank_f2(basis) != space.n:
        return False
    if any(space.pair(a, b) for a in basis for b in basis):
        return False
    W = _span(basis)
    return all(apply(g, v) in W for g in space.generators for v in W)


# ---------------------------------------------------------------------------
# sample groups


def transvection(space_gram: tuple[int, ...], a: int) -> tuple[int, ...]:
    """v -> v + <v, a> a."""
    dim = len(space_gram)
    Ga = apply(space_gram, a)
    return tuple((1 << i) ^ (a if (Ga >> i) & 1 else 0) for i in range(dim))


def sylow_generators(n: int) -> list[tuple[int, ...]]:
    """Generators of a Sylow 2-subgroup of Sp(2n, F_2) for the standard pairing."""
    G = standard_gram(n)
    gens = [transvection(G, 1 << i) for i in range(n)]
    gens += [transvection(G, (1 << i) | (1 << j)) for i in range(n) for j in range(i + 1, n)]
    for i in range(n):
        for j in range(i + 1, n):
            cols = list(identity(2 * n))
            cols[j] ^= 1 << i  # e_j -> e_j + e_i
            cols[n + i] ^= 1 << (n + j)  # f_i -> f_i + f_j
            gens.append(tuple(cols))
    return gens


def inverse(g: tuple[int, ...]) -> tuple[int, ...]:
    x, prev = g, identity(len(g))
    while x != identity(len(g)):
        prev, x = x, compose(g, x)
    return prev


def random_symplectic(n: int, rng: random.Random, length: int = 12) -> tuple[int, ...]:
    G = standard_gram(n)
    out = identity(2 * n)
    for _ in range(length):
        out = compose(transvection(G, rng.randrange(1, 1 << (2 * n))), out)
    return out


def random_two_subgroup(n: int, rng: random.Random) -> SymplecticSpaceF2:
    """A random subgroup of a random conjugate of the standard Sylow 2-subgroup."""
    syl = sylow_generators(n)
    h = random_symplectic(n, rng)
    hi = inverse(h)
    k = rng.randint(1, len(syl))
    gens = []
    for _ in range(k):
        word = identity(2 * n)
        for _ in range(rng.randint(1, 3)):
            word = compose(rng.choice(syl), word)
        gens.append(compose(h, compose(word, hi)))
    return SymplecticSpaceF2(n, standard_gram(n), tuple(gens))


def parse_matrix(text: str) -> tuple[int, ...]:
    rows = []
    for line in text.strip().splitlines():
        line = line.strip()
        if line:
            rows.append([int(ch) for ch in line.replace(" ", "")])
    if any(len(r) != len(rows) or any(x not in (0, 1) for x in r) for r in rows):
        raise ValueError("expected a square 0/1 matrix")
    return rows_to_cols(rows)


def parse_generators(text: str) -> list[tuple[int, ...]]:
    """Matrices separated by blank lines."""
    blocks = [b for b in text.strip().split("\n\n") if b.strip()]
    return [parse_matrix(b) for b in blocks]


def format_vector(v: int, dim: int) -> str:
    return "".join(str((v >> i) & 1) for i in range(dim))
