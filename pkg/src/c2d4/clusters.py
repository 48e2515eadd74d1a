"""Cluster pictures of C2D4 curves over Q_p, p odd.

Roots are realised in L_f = Q_{p^f}(sqrt p).  A semistable curve has all its
roots in such a field with f a power of two, so the search doubles f on
``NotSquare`` and reports non-semistability on ``RamificationError``.
Frobenius acts on L_f through the residue field and fixes sqrt p; inertia
sends sqrt p to -sqrt p.  Both are computed on the roots as permutations.

Root indices 0..5 stand for a1, b1, a2, b2, a3, b3 (ruby, sapphire, turquoise
in pairs).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .arith import Place, QuadExt, SquareClass, square_class, vp
from .config import Config, PrecisionConfig, default_config
from .errors import InternalInconsistency, NotSemistable, Unsupported
from .model import C2D4Curve, InvariantSet, invariant_set_from_roots, invariants_from_roots, matmul, mobius_transform
from .padic import Field, NotSquare, Padic, PrecisionError, RamificationError
from .tables import LocalTableRow, ReductionType, local_table_row

ROOT_NAMES = ("a1", "b1", "a2", "b2", "a3", "b3")
COLOURS = ("r", "r", "s", "s", "t", "t")
IDENTITY = ((1, 0), (0, 1))


# ---------------------------------------------------------------------------
# roots


@dataclass
class RootData:
    p: int
    F: Field
    c: Fraction
    roots: tuple
    frob: tuple[int, ...]
    inertia: tuple[int, ...]
    dist: tuple[tuple[Fraction | None, ...], ...]

    def orbit(self, i: int) -> list[int]:
        seen, todo = {i}, [i]
        while todo:
            j = todo.pop()
            for k in (self.frob[j], self.inertia[j]):
                if k not in seen:
                    seen.add(k)
                    todo.append(k)
        return sorted(seen)

    def base_point(self, S, absprec: int) -> Fraction:
        """A rational number in the smallest disc containing the Galois-stable set S."""
        orb = self.orbit(min(S))
        total = Padic.of(self.F, 0)
        for j in orb:
            total = total + self.roots[j]
        return (total / len(orb)).to_rational(absprec)


def _embed(x: QuadExt, F: Field, sqrt_m: Padic) -> Padic:
    out = Padic.of(F, x.a)
    if x.b:
        out = out + Padic.of(F, x.b) * sqrt_m
    return out


def _match(images, roots, bound: Fraction) -> tuple[int, ...]:
    perm = []
    for img in images:
        hits = []
        for j, r in enumerate(roots):
            try:
                close = (img - r).valuation() > bound
            except PrecisionError:
                close = True
            if close:
                hits.append(j)
        if len(hits) != 1:
            raise PrecisionError("cannot identify the Galois image of a root")
        perm.append(hits[0])
    if sorted(perm) != list(range(len(roots))):
        raise PrecisionError("Galois action is not a permutation at this precision")
    return tuple(perm)


def _roots_in(C: C2D4Curve, F: Field) -> RootData:
    sqrt_m = Padic.of(F, 1) if C.m == 1 else Padic.of(F, C.m).sqrt()
    half = Padic.of(F, Fraction(1, 2))
    roots = []
    for q in C.quadratics:
        b, c = _embed(q.b, F, sqrt_m), _embed(q.c, F, sqrt_m)
        sd = (b * b - 4 * c).sqrt()
        roots += [(sd - b) * half, (-b - sd) * half]
    dist = [[None] * 6 for _ in range(6)]
    for i, j in combinations(range(6), 2):
        dist[i][j] = dist[j][i] = (roots[i] - roots[j]).valuation()
    bound = max(d for row in dist for d in row if d is not None)
    frob = _match([r.frobenius() for r in roots], roots, bound)
    inertia = _match([r.conj_pi() for r in roots], roots, bound)
    return RootData(F.p, F, C.c, tuple(roots), frob, inertia, tuple(tuple(r) for r in dist))


def compute_roots(C: C2D4Curve, p: int, prec: PrecisionConfig | None = None, min_f: int = 1) -> RootData:
    if p == 2:
        raise Unsupported("cluster pictures are only computed for odd p")
    prec = prec or default_config().precision
    f, N = min_f, min(prec.start, prec.cap)
    while True:
        if f > prec.max_residue_degree:
            raise Unsupported(f"roots need a residue extension of degree > {prec.max_residue_degree}")
        if N > prec.cap:
            raise Unsupported(f"precision cap {prec.cap} exhausted at p = {p}")
        try:
            return _roots_in(C, Field(p, f, N))
        except NotSquare:
            f *= 2
        except PrecisionError:
            N *= 2
        except RamificationError:
            raise NotSemistable("the splitting field has ramification degree > 2") from None


# ---------------------------------------------------------------------------
# pictures


@dataclass(frozen=True)
class Cluster:
    roots: frozenset
    depth: Fraction
    relative_depth: Fraction | None

    @property
    def size(self) -> int:
        return len(self.roots)

    @property
    def colours(self) -> str:
        return "".join(sorted(COLOURS[i] for i in self.roots))

    def name(self) -> str:
        return "{" + ",".join(ROOT_NAMES[i] for i in sorted(self.roots)) + "}"


@dataclass(frozen=True)
class ClusterPicture:
    """Proper clusters (top first), the Galois action on roots and twin signs.

    ``signs`` maps a Frobenius-stable twin to its sign and a Frobenius-swapped
    pair of twins (as a frozenset of two root sets) to the product of their
    signs.  ``top_sign`` is set when the roots split into three twins.
    """

    p: int
    clusters: tuple[Cluster, ...]
    frobenius: tuple[int, ...]
    inertia: tuple[int, ...]
    signs: dict = field(default_factory=dict, compare=False)
    top_sign: int | None = None
    data: RootData | None = field(default=None, compare=False, repr=False)

    @property
    def top(self) -> Cluster:
        return self.clusters[0]

    def of_size(self, k: int) -> list[Cluster]:
        return [cl for cl in self.clusters if cl.size == k]

    @property
    def twins(self) -> list[Cluster]:
        return self.of_size(2)

    def parent(self, cl: Cluster) -> Cluster | None:
        above = [o for o in self.clusters if cl.roots < o.roots]
        return min(above, key=lambda o: o.size) if above else None

    def children(self, cl: Cluster) -> list[Cluster]:
        return [o for o in self.clusters if o.roots < cl.roots and self.parent(o) == cl]

    def image(self, cl: Cluster, perm=None) -> frozenset:
        perm = perm or self.frobenius
        return frozenset(perm[i] for i in cl.roots)

    def is_balanced(self) -> bool:
        if self.top.size != 6 or self.top.depth != 0:
            return False
        if self.of_size(4) or self.of_size(5):
            return False
        threes = self.of_size(3)
        return not threes or (len(threes) == 2 and threes[0].depth == threes[1].depth)

    def render(self) -> str:
        """Nested-bracket notation: depth on the top cluster, relative depths below."""

        def sign_of(cl):
            s = self.signs.get(cl.roots)
            return "" if s is None else ("^+" if s == 1 else "^-")

        def draw(cl: Cluster) -> str:
            kids = self.children(cl)
            covered = set().union(*(k.roots for k in kids)) if kids else set()
            parts = [(min(k.roots), draw(k)) for k in kids]
            parts += [(i, ROOT_NAMES[i]) for i in cl.roots if i not in covered]
            body = " ".join(s for _, s in sorted(parts))
            sub = cl.depth if cl.relative_depth is None else cl.relative_depth
            return f"({body})_{sub}{sign_of(cl)}"

        text = draw(self.top)
        if self.top_sign is not None:
            text += " sign " + ("+" if self.top_sign == 1 else "-")
        arcs = []
        for cl in self.clusters[1:]:
            img = self.image(cl)
            if img != cl.roots and min(cl.roots) < min(img):
                other = next(o for o in self.clusters if o.roots == img)
                arcs.append(f"{cl.name()}<->{other.name()}")
        joint = [(k, s) for k, s in self.signs.items() if isinstance(next(iter(k)), frozenset)]
        for k, s in joint:
            arcs.append("joint sign " + ("+" if s == 1 else "-") + " on " + "&".join(
                Cluster(t, Fraction(0), None).name() for t in sorted(k, key=min)))
        if arcs:
            text += "  frob: " + "; ".join(arcs)
        return text


def _build(data: RootData) -> ClusterPicture:
    sets = {frozenset(range(6))}
    for i in range(6):
        for d in {data.dist[i][j] for j in range(6) if j != i}:
            sets.add(frozenset([i] + [j for j in range(6) if j != i and data.dist[i][j] >= d]))
    sets = [s for s in sets if len(s) >= 2]
    depth = {s: min(data.dist[i][j] for i, j in combinations(sorted(s), 2)) for s in sets}
    out = []
    for s in sets:
        above = [o for o in sets if s < o]
        rel = None if not above else depth[s] - depth[min(above, key=len)]
        out.append(Cluster(s, depth[s], rel))
    out.sort(key=lambda cl: (-cl.size, sorted(cl.roots)))
    return ClusterPicture(data.p, tuple(out), data.frob, data.inertia, data=data)


def _theta(data: RootData, twin: frozenset) -> Padic:
    i, j = sorted(twin)
    mid = (data.roots[i] + data.roots[j]) * Fraction(1, 2)
    val = Padic.of(data.F, data.c)
    for k in range(6):
        if k not in twin:
            val = val * (mid - data.roots[k])
    theta = val.sqrt()
    if not theta.in_unramified():
        raise InternalInconsistency("theta is ramified for a twin of a semistable curve")
    return theta


def _pm(x: Padic, y: Padic) -> int:
    """+1 if x = y, -1 if x = -y, to leading order."""
    v = y.valuation()
    for s, z in ((1, x - y), (-1, x + y)):
        try:
            if z.valuation() > v:
                return s
        except PrecisionError:
            return s
    raise InternalInconsistency("Frobenius image of theta is not +-theta")


def _signs(data: RootData, pic: ClusterPicture) -> tuple[dict, int | None]:
    twins = [t.roots for t in pic.twins]
    if len(twins) == 3 and frozenset().union(*twins) == pic.top.roots:
        top = 1 if square_class(data.c, Place(data.p)) is SquareClass.SQUARE else -1
        return {}, top
    signs: dict = {}
    for T in twins:
        img = frozenset(data.frob[i] for i in T)
        if img == T:
            th = _theta(data, T)
            signs[T] = _pm(th.frobenius(), th)
        elif img in twins:
            key = frozenset([T, img])
            if key in signs:
                continue
            if frozenset(data.frob[i] for i in img) != T:
                continue
            prod = _theta(data, T) * _theta(data, img)
            signs[key] = _pm(prod.frobenius(), prod)
    return signs, None


def cluster_picture(C: C2D4Curve, p: int, cfg: Config | None = None, with_signs: bool = True) -> ClusterPicture:
    cfg = cfg or default_config()
    data = compute_roots(C, p, cfg.precision)
    pic = _build(data)
    if not with_signs or not pic.twins:
        return pic
    f = data.F.f
    while True:
        try:
            signs, top = _signs(data, pic)
            break
        except NotSquare:
            f *= 2
            data = compute_roots(C, p, cfg.precision, min_f=f)
            pic = _build(data)
        except InternalInconsistency:
            # signs are only meaningful for semistable curves
            return pic
    return ClusterPicture(pic.p, pic.clusters, pic.frobenius, pic.inertia, signs, top, data)


# ---------------------------------------------------------------------------
# semistability and balancing


def _is_principal(pic: ClusterPicture, cl: Cluster) -> bool:
    if cl.size < 3:
        return False
    kids = pic.children(cl)
    if any(k.size == 4 for k in kids):
        return False
    if len(kids) == 2 and all(k.size == 3 for k in kids):
        return False
    return True


def semistability(pic: ClusterPicture) -> tuple[bool, str]:
    data = pic.data
    for cl in pic.clusters:
        if pic.image(cl, pic.inertia) != cl.roots:
            return False, f"cluster {cl.name()} is not inertia-invariant"
    vc = vp(data.c, data.p)
    for cl in pic.clusters:
        if not _is_principal(pic, cl):
            continue
        if cl.depth.denominator != 1:
            return False, f"principal cluster {cl.name()} has non-integral depth {cl.depth}"
        rs = min(cl.roots)
        total = vc + cl.size * cl.depth + sum(data.dist[k][rs] for k in range(6) if k not in cl.roots)
        if total.denominator != 1 or total.numerator % 2:
            return False, f"parity condition fails for principal cluster {cl.name()}"
    return True, "semistable"


def is_semistable(C: C2D4Curve, p: int, cfg: Config | None = None) -> tuple[bool, str]:
    try:
        pic = cluster_picture(C, p, cfg, with_signs=False)
    except NotSemistable as e:
        return False, e.reason
    return semistability(pic)


@dataclass(frozen=True)
class BalancedModel:
    curve: C2D4Curve
    matrix: tuple
    picture: ClusterPicture
    steps: int


def _five_of_singletons(pic: ClusterPicture) -> bool:
    fives = pic.of_size(5)
    return bool(fives) and not any(cl.size < 5 for cl in pic.clusters[1:])


def _rebalance_step(pic: ClusterPicture) -> tuple | None:
    data, p = pic.data, pic.p
    top = pic.top
    if top.depth != 0:
        if top.depth.denominator != 1:
            raise Unsupported(f"top cluster depth {top.depth} is not integral")
        d = int(top.depth)
        return ((1, 0), (0, Fraction(p) ** d))
    big = pic.of_size(5) + pic.of_size(4)
    if big and not _five_of_singletons(pic):
        S = big[0]
        L = S.depth
        if L.denominator != 1:
            raise Unsupported(f"cluster {S.name()} has non-integral depth")
        return _inversion(data, S.roots, int(L), range(p))
    threes = pic.of_size(3)
    if len(threes) == 1 or (len(threes) == 2 and threes[0].depth != threes[1].depth):
        S = max(threes, key=lambda cl: cl.depth)
        others = [cl for cl in threes if cl is not S]
        j = (S.depth - (others[0].depth if others else 0)) / 2
        if j.denominator != 1:
            raise Unsupported("size-3 cluster depths cannot be equalised by an integral shift")
        return _inversion(data, S.roots, int(j), range(1, p))
    return None


def _inversion(data: RootData, S, L: int, digits) -> tuple:
    """Matrix of x -> p^L/(x - z) with v(z - r) = L for every r in S."""
    p = data.p
    z0 = data.base_point(S, L + 2)
    for u in digits:
        z = z0 + u * Fraction(p) ** L
        zz = Padic.of(data.F, z)
        try:
            if all((zz - data.roots[i]).valuation() == L for i in S):
                return ((0, Fraction(p) ** L), (1, -z))
        except PrecisionError:
            continue
    raise Unsupported(f"residue field too small to rebalance at p = {p}")


def rebalance(C: C2D4Curve, p: int, cfg: Config | None = None) -> BalancedModel:
    """Move C by Mobius transformations until its cluster picture is balanced.

    A size-5 cluster whose children are all singletons is left in place, since
    the local tables treat that shape directly.
    """
    cfg = cfg or default_config()
    model, M = C, IDENTITY
    for step in range(cfg.search.rebalance_steps + 1):
        pic = cluster_picture(model, p, cfg, with_signs=False)
        T = _rebalance_step(pic)
        if T is None:
            return BalancedModel(model, M, cluster_picture(model, p, cfg), step)
        model = mobius_transform(model, T)
        M = matmul(T, M)
    raise Unsupported("rebalancing did not converge")


def twin_sign(C: C2D4Curve, p: int, twin) -> int:
    """Sign of a Frobenius-stable twin, or the joint sign of a swapped pair containing it."""
    pic = cluster_picture(C, p)
    T = frozenset(twin)
    if pic.top_sign is not None:
        return pic.top_sign
    if T in pic.signs:
        return pic.signs[T]
    for k, s in pic.signs.items():
        if isinstance(next(iter(k)), frozenset) and T in k:
            return s
    raise Unsupported(f"no sign defined for {sorted(T)}")


# ---------------------------------------------------------------------------
# classification


_RELABELINGS_ST = ((0, 1, 2, 3, 4, 5), (0, 1, 4, 5, 2, 3))
_RELABELINGS_ALL = _RELABELINGS_ST + (
    (2, 3, 0, 1, 4, 5),
    (4, 5, 2, 3, 0, 1),
    (2, 3, 4, 5, 0, 1),
    (4, 5, 0, 1, 2, 3),
)


@dataclass
class _View:
    """A picture seen through a relabeling; ``perm[new] = old``."""

    pic: ClusterPicture
    perm: tuple[int, ...]

    def __post_init__(self):
        self.inv = {old: new for new, old in enumerate(self.perm)}

    def new(self, S) -> frozenset:
        return frozenset(self.inv[i] for i in S)

    def colours(self, cl: Cluster) -> str:
        return "".join(sorted(COLOURS[self.inv[i]] for i in cl.roots))

    def swapped(self, cl: Cluster) -> bool:
        return self.pic.image(cl) != cl.roots

    def sign(self, cl: Cluster) -> int | None:
        return self.pic.signs.get(cl.roots)

    def joint_sign(self, a: Cluster, b: Cluster) -> int | None:
        return self.pic.signs.get(frozenset([a.roots, b.roots]))


def _int(x: Fraction, what: str) -> int:
    if x is None or x.denominator != 1:
        raise Unsupported(f"{what} = {x} is not an integer")
    return int(x)


def _shape(view: _View):
    """Return (family, variant-kind, params) or None."""
    pic = view.pic
    rest = list(pic.clusters[1:])
    sizes = sorted(cl.size for cl in rest)
    twins = [cl for cl in rest if cl.size == 2]
    threes = [cl for cl in rest if cl.size == 3]
    if not rest:
        return "2", "abc", {}
    if sizes == [5]:
        S = rest[0]
        (outside,) = set(range(6)) - S.roots
        kind = "b" if COLOURS[view.inv[outside]] == "r" else "c"
        return "2", kind, {"k": S.relative_depth}
    if any(s in (4, 5) for s in sizes):
        return None
    if threes:
        if len(threes) != 2 or threes[0].relative_depth != threes[1].relative_depth:
            return None
        S1, S2 = threes
        t = _int(S1.relative_depth, "t")
        swapped = pic.image(S1) == S2.roots
        inner = {id(S): [tw for tw in twins if tw.roots < S.roots] for S in threes}
        c1, c2 = view.colours(S1), view.colours(S2)
        if not twins:
            fam = "1x~1" if swapped else "1x1"
            if {c1, c2} == {"rss", "rtt"}:
                return fam, "a", {"t": t}
            if c1 == c2 == "rst":
                return fam, "bc", {"t": t}
            return None
        if len(twins) == 1:
            (T,) = twins
            S = S1 if T.roots < S1.roots else S2
            if view.colours(T) != "rr" or swapped:
                return None
            return "1xI_n", "a", {"t": t, "n": _int(2 * T.relative_depth, "n"), "eps": view.sign(T)}
        if len(twins) == 2 and all(len(v) == 1 for v in inner.values()):
            T1, T2 = inner[id(S1)][0], inner[id(S2)][0]
            if {view.colours(T1), view.colours(T2)} != {"ss", "tt"}:
                return None
            if view.colours(T1) == "tt":
                T1, T2 = T2, T1
            n, m = _int(2 * T1.relative_depth, "n"), _int(2 * T2.relative_depth, "m")
            if swapped:
                return "I_nx~I_n", "a", {"t": t, "n": n, "eps": view.joint_sign(T1, T2)}
            return "I_nxI_m", "a", {"t": t, "n": n, "m": m, "eps": view.sign(T1), "delta": view.sign(T2)}
        return None
    cols = sorted(view.colours(T) for T in twins)
    if len(twins) == 1:
        (T,) = twins
        c = cols[0]
        if c == "rr":
            return "I_n", "a", {"n": _int(2 * T.relative_depth, "n"), "eps": view.sign(T)}
        if c in ("ss", "tt"):
            return "I_n", "b", {"n": _int(2 * T.relative_depth, "n"), "eps": view.sign(T)}
        if c == "st":
            return "I_2n", "c", {"n": _int(T.relative_depth, "n"), "eps": view.sign(T)}
        return "I_2n", "d", {"n": _int(T.relative_depth, "n"), "eps": view.sign(T)}
    if len(twins) == 2:
        T1, T2 = twins
        swapped = view.swapped(T1)
        if cols == ["ss", "tt"]:
            if view.colours(T1) == "tt":
                T1, T2 = T2, T1
            n, m = _int(2 * T1.relative_depth, "n"), _int(2 * T2.relative_depth, "m")
            if swapped:
                return "I_n~n", "a", {"n": n, "eps": view.joint_sign(T1, T2)}
            return "I_nm", "a", {"n": n, "m": m, "eps": view.sign(T1), "delta": view.sign(T2)}
        if cols == ["st", "st"]:
            if T2.relative_depth < T1.relative_depth:
                T1, T2 = T2, T1
            n, m = _int(2 * T1.relative_depth, "n"), _int(2 * T2.relative_depth, "m")
            if swapped:
                return "I_n~n", "b", {"n": n, "eps": view.joint_sign(T1, T2)}
            return "I_nm", "b", {"n": n, "m": m, "eps": view.sign(T1), "delta": view.sign(T2)}
        return None
    if len(twins) == 3 and cols == ["rr", "ss", "tt"]:
        by = {view.colours(T): T for T in twins}
        n = _int(2 * by["ss"].relative_depth, "n")
        m = _int(2 * by["tt"].relative_depth, "m")
        l = _int(2 * by["rr"].relative_depth, "l")
        if view.swapped(by["ss"]):
            if view.pic.image(by["ss"]) != by["tt"].roots:
                return None
            return "U_n~n", "a", {"n": n, "l": l, "eps": pic.top_sign}
        return "U", "a", {"n": n, "m": m, "l": l, "eps": pic.top_sign}
    return None


@dataclass
class Classification:
    type: ReductionType
    row: LocalTableRow
    labeling: tuple[int, ...]
    valuation_Delta_over_c: Fraction
    side_conditions_hold: bool
    E_labelled: int | None
    notes: list[str] = field(default_factory=list)


def _padic_rational(x: Padic, digits: int = 6) -> Fraction:
    if not x.in_base_field():
        raise InternalInconsistency("an invariant that must lie in Q_p does not")
    v = x.valuation()
    return x.to_rational(int(v) + digits)


def labelled_invariants(data: RootData, perm) -> dict:
    roots = [data.roots[i] for i in perm]
    return invariants_from_roots(Padic.of(data.F, data.c), roots)


def _val(x: Padic):
    try:
        return x.valuation()
    except PrecisionError:
        return None


def _side_conditions(T: ReductionType, row: LocalTableRow, q: dict) -> bool:
    want = {"t": T.t, "n/2": None if T.n is None else Fraction(T.n, 2), "0": 0}
    for cond in row.side_conditions:
        lhs, rhs = cond[2:].split(")=")
        if _val(q[lhs]) != want[rhs]:
            return False
    if _val(q["eta1"]) is None:
        return False
    return True


def _labelled_E(data: RootData, perm) -> int | None:
    from .model import error_term_E

    roots = [data.roots[i] for i in perm]
    try:
        inv = invariant_set_from_roots(Padic.of(data.F, data.c), roots, _padic_rational)
        return error_term_E(inv, Place(data.p))
    except (PrecisionError, ArithmeticError):
        return None


def classify_type(picture: ClusterPicture, invariants: InvariantSet | None = None) -> Classification:
    """Match a balanced semistable picture against the supported table cases.

    Relabelings of the colours are tried when they are defined over Q_p:
    swapping s and t always, any permutation when Frobenius and inertia fix
    the sapphire pair.
    """
    data = picture.data
    if data is None:
        raise ValueError("picture carries no root data")
    stable_s = {picture.frobenius[2], picture.frobenius[3]} == {2, 3} and {
        picture.inertia[2],
        picture.inertia[3],
    } == {2, 3}
    perms = _RELABELINGS_ALL if stable_s else _RELABELINGS_ST
    for perm in perms:
        view = _View(picture, perm)
        shape = _shape(view)
        if shape is None:
            continue
        family, kind, params = shape
        if any(params.get(k, 0) is None for k in ("eps", "delta")):
            raise Unsupported("twin signs are not available for this picture")
        q = labelled_invariants(data, perm)
        vD = _val(q["Delta"])
        if vD is None:
            raise Unsupported("Delta vanishes in this labeling")
        v_Dc = vD - vp(data.c, data.p)
        r = int(v_Dc) if v_Dc.denominator == 1 else None
        variant = kind
        if family == "2":
            if kind in ("b", "c"):
                r = _int(v_Dc - 2 * params["k"], "r")
            dh1 = _padic_rational(q["res_st"] / (q["Delta"] * q["Delta"]))
            square = square_class(dh1, Place(data.p)) is SquareClass.SQUARE
            variant = {"abc": "a", "b": "b", "c": "c"}[kind]
            if not square:
                variant = {"a": "d", "b": "e", "c": "f"}[variant]
        elif kind == "bc":
            r = _int(v_Dc - 2 * params["t"], "r")
            dh1 = _padic_rational(q["res_st"] / (q["Delta"] * q["Delta"]))
            square = square_class(dh1, Place(data.p)) is SquareClass.SQUARE
            variant = "b" if square else "c"
        elif family in ("I_nm", "I_n~n") and kind == "b":
            r = _int(v_Dc - Fraction(params["n"], 2), "r")
        params.pop("k", None)
        T = ReductionType(family, variant, r=r, **params)
        try:
            row = local_table_row(T)
        except (KeyError, ValueError, TypeError) as e:
            raise Unsupported(f"{T.family}({T.variant}) with these parameters is not a table case: {e}")
        side = _side_conditions(T, row, q)
        E_lab = _labelled_E(data, perm)
        return Classification(T, row, perm, v_Dc, side, E_lab)
    raise Unsupported("cluster picture is not among the supported table cases: " + picture.render())
