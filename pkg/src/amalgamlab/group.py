"""Finite permutation groups with deterministic stabilizer chains.

A PermGroup is generated by a list of same-degree permutations.  Orders,
membership, stabilizers and element enumeration all go through a stabilizer
chain built by a Schreier-Sims procedure that is deterministic end to end:

  * base points are chosen in increasing point order restricted to moved
    points (a custom point ranking supports pointwise stabilizers),
  * orbits and transversals are breadth-first in generator order,
  * Schreier generators are processed in a fixed scan order and the scan
    restarts from the top whenever a new strong generator is placed.

Identical inputs therefore always produce identical chains, orders, orbit
labelings and enumeration orders.  All arithmetic is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from . import kernels
from .config import guards
from .errors import (
    ConstructionError,
    DegreeMismatchError,
    GuardExceededError,
)
from .perm import Permutation

__all__ = [
    "PermGroup",
    "ActionHom",
    "SubgroupRelation",
    "generate_group",
    "subgroup_relations",
    "intersection",
    "commutator_subgroup",
    "symmetric_group",
    "alternating_group",
    "cyclic_group",
    "dihedral_group",
    "trivial_group",
    "direct_sum_gens",
]


def _is_identity(img: tuple) -> bool:
    return all(i == x for i, x in enumerate(img))


class _Level:
    __slots__ = ("base", "gens", "gen_set", "orbit", "transversal")

    def __init__(self, base: int) -> None:
        self.base = base
        self.gens: list[tuple] = []
        self.gen_set: set[tuple] = set()
        self.orbit: list[int] = [base]
        self.transversal: dict[int, tuple] = {}


class _Chain:
    """Stabilizer chain over image tuples (deterministic Schreier-Sims).

    Each level keeps the generators of its stabilizer subgroup; the lists
    are nested, a strong generator found at one level is appended to every
    level it belongs to.  Orbits only ever extend, never rebuild, so coset
    representatives stay stable while the chain grows.

    `rank` orders the points used for base selection; None means natural
    order.  Bases are always the lowest-ranked moved point of their level
    group (enforced by re-basing when a later generator moves a lower
    point), so with a custom rank the subgroup fixing the first k ranked
    points is exactly the level group reached after consuming them, which
    is how pointwise stabilizers are extracted.
    """

    def __init__(
        self,
        degree: int,
        gen_images: Sequence[tuple],
        rank: Sequence[int] | None = None,
        order_cap: int | None = None,
    ) -> None:
        self.degree = degree
        self.rank = list(rank) if rank is not None else None
        self.order_cap = order_cap if order_cap is not None else guards().order
        self.levels: list[_Level] = []
        self._identity = tuple(range(degree))
        seeds = []
        seen = set()
        for img in gen_images:
            if not _is_identity(img) and img not in seen:
                seen.add(img)
                seeds.append(img)
        if seeds:
            base = min(
                (x for img in seeds for x in Permutation._raw(img).moved_points()),
                key=self._point_rank,
            )
            lvl = _Level(base)
            lvl.gens = list(seeds)
            lvl.gen_set = set(seeds)
            self.levels.append(lvl)
            self._extend_orbit(0)
            self._process(0)

    def _point_rank(self, point: int) -> int:
        return self.rank[point] if self.rank is not None else point

    def _min_moved(self, img: tuple) -> int:
        return min(Permutation._raw(img).moved_points(), key=self._point_rank)

    def effective_gens(self, i: int) -> list[tuple]:
        return list(self.levels[i].gens) if i < len(self.levels) else []

    def _extend_orbit(self, i: int) -> None:
        lvl = self.levels[i]
        if not lvl.transversal:
            lvl.transversal[lvl.base] = self._identity
            lvl.orbit = [lvl.base]
        head = 0
        while head < len(lvl.orbit):
            point = lvl.orbit[head]
            head += 1
            u = lvl.transversal[point]
            for g in lvl.gens:
                image = g[point]
                if image not in lvl.transversal:
                    lvl.transversal[image] = kernels.compose(u, g)
                    lvl.orbit.append(image)

    def order(self) -> int:
        total = 1
        for lvl in self.levels:
            total *= len(lvl.orbit)
        return total

    def sift(self, img: tuple, start: int = 0) -> tuple[tuple, int]:
        """Quotient img by transversal elements; (residue, stop level)."""
        for j in range(start, len(self.levels)):
            lvl = self.levels[j]
            x = img[lvl.base]
            u = lvl.transversal.get(x)
            if u is None:
                return img, j
            img = kernels.compose(img, kernels.inverse(u))
        return img, len(self.levels)

    def contains(self, img: tuple) -> bool:
        residue, _ = self.sift(img)
        return _is_identity(residue)

    def _place(self, img: tuple, lo: int, j: int) -> int:
        """Record a strong generator spanning levels lo..j.

        Returns the deepest level whose generator list changed.  When the
        generator moves a point ranked below an existing base, the chain
        tail from that level on is collapsed and re-based.
        """
        m_rank = self._point_rank(self._min_moved(img))
        for k in range(lo, j + 1):
            if k == len(self.levels):
                lvl = _Level(self._min_moved(img))
                lvl.gens = [img]
                lvl.gen_set = {img}
                self.levels.append(lvl)
                self._extend_orbit(k)
                self._check_order_cap()
                return k
            lvl = self.levels[k]
            if m_rank < self._point_rank(lvl.base):
                gens = lvl.gens + [img]
                del self.levels[k:]
                fresh = _Level(
                    min(
                        (
                            x
                            for g in gens
                            for x in Permutation._raw(g).moved_points()
                        ),
                        key=self._point_rank,
                    )
                )
                fresh.gens = gens
                fresh.gen_set = set(gens)
                self.levels.append(fresh)
                self._extend_orbit(k)
                self._check_order_cap()
                return k
            if img not in lvl.gen_set:
                lvl.gens.append(img)
                lvl.gen_set.add(img)
                self._extend_orbit(k)
        self._check_order_cap()
        return j

    def _check_order_cap(self) -> None:
        if self.order() > self.order_cap:
            raise GuardExceededError("order", self.order_cap, f"> {self.order_cap}")

    def _process(self, i: int) -> None:
        """Make levels i.. satisfy the strong generating property, assuming
        deeper levels already do."""
        self._extend_orbit(i)
        lvl = self.levels[i]
        # Orbit and generator list of this level are frozen during the
        # scan: new strong generators only land at deeper levels.
        p_idx = 0
        while p_idx < len(lvl.orbit):
            point = lvl.orbit[p_idx]
            p_idx += 1
            u = lvl.transversal[point]
            g_idx = 0
            while g_idx < len(lvl.gens):
                s = lvl.gens[g_idx]
                g_idx += 1
                t = lvl.transversal[s[point]]
                h = kernels.compose(kernels.compose(u, s), kernels.inverse(t))
                if _is_identity(h):
                    continue
                residue, j = self.sift(h, i + 1)
                if _is_identity(residue):
                    continue
                deepest = self._place(residue, i + 1, j)
                for l in range(deepest, i, -1):
                    self._process(l)

    def base(self) -> list[int]:
        return [lvl.base for lvl in self.levels]

    def basic_orbits(self) -> list[list[int]]:
        return [list(lvl.orbit) for lvl in self.levels]

    def iter_elements(self) -> Iterator[tuple]:
        """All elements, deterministically: identity first, grouped by the
        image of the first base point in increasing order."""

        def rec(i: int) -> Iterator[tuple]:
            if i == len(self.levels):
                yield self._identity
                return
            lvl = self.levels[i]
            for point in sorted(lvl.orbit):
                u = lvl.transversal[point]
                for rest in rec(i + 1):
                    yield kernels.compose(rest, u)

        return rec(0)


class PermGroup:
    """Group generated by permutations of a common degree.

    Generators keep their input order with identities and duplicates
    dropped; every derived quantity is deterministic in that list.
    """

    __slots__ = ("_degree", "_gens", "_chain")

    def __init__(
        self,
        generators: Iterable[Permutation] = (),
        degree: int | None = None,
    ) -> None:
        gens: list[Permutation] = []
        seen = set()
        for g in generators:
            if degree is None:
                degree = g.degree
            elif g.degree != degree:
                raise DegreeMismatchError(
                    f"generator degree {g.degree}, expected {degree}"
                )
            if not g.is_identity() and g.images not in seen:
                seen.add(g.images)
                gens.append(g)
        if degree is None:
            raise ValueError("degree required for a group with no generators")
        self._degree = degree
        self._gens = tuple(gens)
        self._chain: _Chain | None = None

    @classmethod
    def from_images(cls, degree: int, images: Iterable[tuple]) -> "PermGroup":
        return cls((Permutation(img) for img in images), degree=degree)

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self._gens

    def gen_images(self) -> list[tuple]:
        return [g.images for g in self._gens]

    def chain(self) -> _Chain:
        if self._chain is None:
            self._chain = _Chain(self._degree, self.gen_images())
        return self._chain

    def order(self) -> int:
        return self.chain().order()

    def is_trivial(self) -> bool:
        return not self._gens

    def __contains__(self, perm: Permutation) -> bool:
        if not isinstance(perm, Permutation) or perm.degree != self._degree:
            return False
        return self.chain().contains(perm.images)

    def contains_images(self, img: tuple) -> bool:
        return len(img) == self._degree and self.chain().contains(img)

    def elements(self) -> Iterator[Permutation]:
        self._scan_guard()
        return (Permutation._raw(img) for img in self.chain().iter_elements())

    def element_images(self) -> Iterator[tuple]:
        self._scan_guard()
        return self.chain().iter_elements()

    def base(self) -> list[int]:
        return self.chain().base()

    def basic_orbits(self) -> list[list[int]]:
        return self.chain().basic_orbits()

    def strong_generators(self) -> list[Permutation]:
        return [Permutation._raw(img) for img in self.chain().effective_gens(0)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (
            self._degree == other._degree
            and self.order() == other.order()
            and all(g in other for g in self._gens)
        )

    def __hash__(self) -> int:
        return hash((self._degree, self.order()))

    def __repr__(self) -> str:
        return f"PermGroup(degree={self._degree}, order={self.order()})"

    # -- orbits ---------------------------------------------------------

    def orbit(self, point: int) -> list[int]:
        """Orbit of a point in breadth-first discovery order."""
        self._check_point(point)
        orbit, _ = kernels.orbit_transversal(self.gen_images(), point, self._degree)
        return orbit

    def orbits(self) -> list[list[int]]:
        """All orbits, each sorted, ordered by least point."""
        seen = set()
        out = []
        for x in range(self._degree):
            if x in seen:
                continue
            orb = sorted(self.orbit(x))
            seen.update(orb)
            out.append(orb)
        return out

    def transporter(self, point: int, target: int) -> Permutation | None:
        """Some element mapping point to target, None if separate orbits."""
        self._check_point(point)
        self._check_point(target)
        orbit, transversal = kernels.orbit_transversal(
            self.gen_images(), point, self._degree
        )
        img = transversal.get(target)
        return Permutation._raw(img) if img is not None else None

    def element_with_images(self, mapping: dict) -> Permutation | None:
        """A deterministic element sending every key to its value, or None.

        Walks a stabilizer chain whose base starts with the prescribed
        points: at each level the transversal entry hitting the (adjusted)
        target is forced, so the result is canonical; points that the
        prefix stabilizer fixes must already sit on their targets.
        """
        if not mapping:
            return Permutation.identity(self._degree)
        for p, q in mapping.items():
            self._check_point(p)
            self._check_point(q)
        chain, cut = self._prefix_chain(list(mapping))
        current = dict(mapping)
        acc = tuple(range(self._degree))
        for lvl in chain.levels[:cut]:
            q = current.pop(lvl.base)
            u = lvl.transversal.get(q)
            if u is None:
                return None
            acc = kernels.compose(u, acc)
            u_inv = kernels.inverse(u)
            current = {p: u_inv[t] for p, t in current.items()}
        if any(p != t for p, t in current.items()):
            return None
        return Permutation._raw(acc)

    def is_transitive(self) -> bool:
        return self._degree > 0 and len(self.orbit(0)) == self._degree

    def is_semiregular(self) -> bool:
        """Only the identity fixes a point."""
        return all(
            self.stabilizer(orb[0]).is_trivial() for orb in self.orbits()
        )

    def is_regular(self) -> bool:
        return self.is_transitive() and self.is_semiregular()

    def fixed_points(self) -> list[int]:
        gens = self.gen_images()
        return [x for x in range(self._degree) if all(g[x] == x for g in gens)]

    # -- stabilizers ----------------------------------------------------

    def _check_point(self, point: int) -> None:
        if not 0 <= point < self._degree:
            raise ValueError(f"point {point} out of range for degree {self._degree}")

    def _prefix_chain(self, points: Sequence[int]) -> tuple[_Chain, int]:
        """Chain whose base starts with the given points; returns it with
        the level index of the subgroup fixing all of them."""
        prefix = sorted(set(points))
        for x in prefix:
            self._check_point(x)
        pos = {x: i for i, x in enumerate(prefix)}
        rest = [x for x in range(self._degree) if x not in pos]
        rank = [0] * self._degree
        for i, x in enumerate(prefix + rest):
            rank[x] = i
        chain = _Chain(self._degree, self.gen_images(), rank=rank)
        cut = 0
        prefix_set = set(prefix)
        while cut < len(chain.levels) and chain.levels[cut].base in prefix_set:
            cut += 1
        return chain, cut

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        points = list(points)
        if not points:
            return self
        chain, cut = self._prefix_chain(points)
        return PermGroup.from_images(self._degree, chain.effective_gens(cut))

    def stabilizer(self, point: int) -> "PermGroup":
        return self.pointwise_stabilizer([point])

    def orbit_and_stabilizer(self, point: int) -> tuple[list[int], "PermGroup"]:
        return self.orbit(point), self.stabilizer(point)

    def setwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        target = set(points)
        for x in target:
            self._check_point(x)
        if not target or len(target) == self._degree:
            return self
        limits = guards()
        if self.order() <= limits.elements:
            return self._grown(
                img
                for img in self.element_images()
                if all(img[x] in target for x in target)
            )
        if self._degree > limits.setwise_degree:
            raise GuardExceededError("setwise_degree", limits.setwise_degree, self._degree)
        hits: list[tuple] = []

        def test(img: tuple) -> bool:
            return all(img[x] in target for x in target)

        def prune(img: tuple, fixed: list[int]) -> bool:
            for x in fixed:
                if (x in target) != (img[x] in target):
                    return False
            return True

        self._backtrack(test, prune, hits.append)
        return self._grown(iter(hits))

    def _backtrack(
        self,
        test: Callable[[tuple], bool],
        prune: Callable[[tuple, list[int]], bool],
        emit: Callable[[tuple], None],
    ) -> None:
        """Depth-first search over chain cosets.

        At depth i the partial product already determines the images of all
        points fixed by the level-i group; `prune` sees the partial image
        tuple plus that point list and may cut the subtree.
        """
        chain = self.chain()
        levels = chain.levels
        fixed_at: list[list[int]] = []
        for i in range(len(levels) + 1):
            moved = set()
            for g in chain.effective_gens(i):
                moved.update(Permutation._raw(g).moved_points())
            fixed_at.append(sorted(set(range(self._degree)) - moved))

        def rec(i: int, partial: tuple) -> None:
            if i == len(levels):
                if test(partial):
                    emit(partial)
                return
            lvl = levels[i]
            for point in sorted(lvl.orbit):
                u = lvl.transversal[point]
                nxt = kernels.compose(u, partial)
                if prune(nxt, fixed_at[i + 1]):
                    rec(i + 1, nxt)

        rec(0, tuple(range(self._degree)))

    def _grown(self, images: Iterable[tuple]) -> "PermGroup":
        """Group generated by the stream, adding only non-members.

        Deterministic: candidates are tested in stream order.
        """
        gens: list[tuple] = []
        current: PermGroup | None = None
        for img in images:
            if _is_identity(img):
                continue
            if current is None:
                gens.append(img)
                current = PermGroup.from_images(self._degree, gens)
            elif not current.contains_images(img):
                gens.append(img)
                current = PermGroup.from_images(self._degree, gens)
        if current is None:
            return PermGroup((), degree=self._degree)
        return current

    # -- subgroup relations ----------------------------------------------

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        if self._degree != other._degree:
            raise DegreeMismatchError(
                f"degree {self._degree} vs degree {other._degree}"
            )
        return all(g in other for g in self._gens)

    def __le__(self, other: "PermGroup") -> bool:
        return self.is_subgroup_of(other)

    def is_normal_in(self, other: "PermGroup") -> bool:
        """Whether other normalizes this group (self need not be <= other)."""
        if self._degree != other._degree:
            raise DegreeMismatchError(
                f"degree {self._degree} vs degree {other._degree}"
            )
        return all(
            self.contains_images(kernels.conjugate(s.images, g.images))
            for s in self._gens
            for g in other._gens
        )

    def conjugate(self, g: Permutation) -> "PermGroup":
        if g.degree != self._degree:
            raise DegreeMismatchError(f"degree {self._degree} ^ degree {g.degree}")
        return PermGroup.from_images(
            self._degree,
            (kernels.conjugate(s.images, g.images) for s in self._gens),
        )

    def intersection(self, other: "PermGroup") -> "PermGroup":
        return intersection(self, other)

    def join(self, other: "PermGroup") -> "PermGroup":
        """Subgroup generated by both groups."""
        if self._degree != other._degree:
            raise DegreeMismatchError(
                f"degree {self._degree} vs degree {other._degree}"
            )
        return PermGroup(self._gens + other._gens, degree=self._degree)

    # -- normal-subgroup machinery ---------------------------------------

    def normal_closure(self, sub: "PermGroup | Iterable[Permutation]") -> "PermGroup":
        """Smallest subgroup containing sub that is normalized by self."""
        seed = sub.generators if isinstance(sub, PermGroup) else tuple(sub)
        gens: list[tuple] = []
        seen = set()
        for s in seed:
            if s.degree != self._degree:
                raise DegreeMismatchError(
                    f"degree {s.degree} inside degree {self._degree}"
                )
            if not s.is_identity() and s.images not in seen:
                seen.add(s.images)
                gens.append(s.images)
        closure = PermGroup.from_images(self._degree, gens)
        queue = list(gens)
        while queue:
            t = queue.pop(0)
            for g in self._gens:
                c = kernels.conjugate(t, g.images)
                if not closure.contains_images(c):
                    gens.append(c)
                    closure = PermGroup.from_images(self._degree, gens)
                    queue.append(c)
        return closure

    def centralizer(self, other: "PermGroup | Permutation") -> "PermGroup":
        targets = (
            other.gen_images()
            if isinstance(other, PermGroup)
            else [other.images]
        )
        for t in targets:
            if len(t) != self._degree:
                raise DegreeMismatchError(
                    f"degree {len(t)} vs degree {self._degree}"
                )
        self._scan_guard()
        return self._grown(
            img
            for img in self.element_images()
            if all(kernels.conjugate(t, img) == t for t in targets)
        )

    def center(self) -> "PermGroup":
        return self.centralizer(self)

    def normalizer(self, other: "PermGroup") -> "PermGroup":
        if other._degree != self._degree:
            raise DegreeMismatchError(
                f"degree {other._degree} vs degree {self._degree}"
            )
        self._scan_guard()
        targets = other.gen_images()
        return self._grown(
            img
            for img in self.element_images()
            if all(
                other.contains_images(kernels.conjugate(t, img)) for t in targets
            )
        )

    def core(self, sub: "PermGroup") -> "PermGroup":
        """Largest subgroup of sub normal in self (coset-action kernel)."""
        return self.coset_action(sub).kernel

    def _scan_guard(self) -> None:
        limit = guards().elements
        if self.order() > limit:
            raise GuardExceededError("elements", limit, self.order())

    # -- coset action -----------------------------------------------------

    def coset_rep(self, sub_chain: _Chain, img: tuple) -> tuple:
        """Lexicographically least element of the right coset (sub)·img."""
        for lvl in sub_chain.levels:
            best = min(lvl.orbit, key=img.__getitem__)
            img = kernels.compose(lvl.transversal[best], img)
        return img

    def coset_action(self, sub: "PermGroup") -> "ActionHom":
        """Right-multiplication action on right cosets of sub.

        Cosets are labeled by first discovery in a breadth-first walk that
        applies the generators in order starting from the coset of sub
        itself, which therefore always has label 0.
        """
        if not sub.is_subgroup_of(self):
            raise ConstructionError("coset action requires a subgroup")
        index = self.order() // sub.order()
        limit = guards().degree
        if index > limit:
            raise GuardExceededError("degree", limit, index)
        sub_chain = sub.chain()
        start = self.coset_rep(sub_chain, tuple(range(self._degree)))
        reps = [start]
        labels = {start: 0}
        gen_imgs = self.gen_images()
        head = 0
        while head < len(reps):
            rep = reps[head]
            head += 1
            for g in gen_imgs:
                image = self.coset_rep(sub_chain, kernels.compose(rep, g))
                if image not in labels:
                    labels[image] = len(reps)
                    reps.append(image)
        if len(reps) != index:
            raise ConstructionError(
                f"coset walk found {len(reps)} cosets, expected index {index}"
            )

        def apply(g: Permutation) -> Permutation:
            if g.images not in _apply_cache:
                if not self.contains_images(g.images):
                    raise ValueError("element outside the acting group")
                _apply_cache[g.images] = tuple(
                    labels[self.coset_rep(sub_chain, kernels.compose(rep, g.images))]
                    for rep in reps
                )
            return Permutation._raw(_apply_cache[g.images])

        _apply_cache: dict[tuple, tuple] = {}
        images = tuple(apply(g) for g in self._gens)
        return ActionHom(
            source=self,
            target_degree=index,
            generator_images=images,
            _apply=apply,
            _kernel_thunk=lambda: self._coset_kernel(images, index),
        )

    def _coset_kernel(
        self, action_images: Sequence[Permutation], index: int
    ) -> "PermGroup":
        # Pointwise stabilizer of the coset points inside the group acting
        # on original points and cosets simultaneously.
        n = self._degree
        combined = [
            g.images + tuple(n + x for x in a.images)
            for g, a in zip(self._gens, action_images)
        ]
        big = PermGroup.from_images(n + index, combined)
        fixer = big.pointwise_stabilizer(range(n, n + index))
        return PermGroup.from_images(
            n, (img[:n] for img in (g.images for g in fixer.generators))
        )


@dataclass
class ActionHom:
    """Homomorphism from a permutation group to an action on a new domain,
    presented by the images of the source generators."""

    source: PermGroup
    target_degree: int
    generator_images: tuple[Permutation, ...]
    _apply: Callable[[Permutation], Permutation]
    _kernel_thunk: Callable[[], PermGroup] | None = None
    _kernel: PermGroup | None = None

    def apply(self, g: Permutation) -> Permutation:
        return self._apply(g)

    @property
    def kernel(self) -> PermGroup:
        if self._kernel is None:
            assert self._kernel_thunk is not None
            self._kernel = self._kernel_thunk()
        return self._kernel

    def image_group(self) -> PermGroup:
        return PermGroup(self.generator_images, degree=self.target_degree)

    def map_subgroup(self, sub: PermGroup) -> PermGroup:
        if not sub.is_subgroup_of(self.source):
            raise ConstructionError("can only map subgroups of the source")
        return PermGroup(
            (self.apply(g) for g in sub.generators), degree=self.target_degree
        )


@dataclass(frozen=True)
class SubgroupRelation:
    is_subgroup: bool
    equal: bool
    index: int | None


def generate_group(
    generators: Iterable[Permutation], degree: int | None = None
) -> PermGroup:
    return PermGroup(generators, degree=degree)


def subgroup_relations(a: PermGroup, b: PermGroup) -> SubgroupRelation:
    """How a sits inside b: containment, equality and index |b : a|."""
    if a.degree != b.degree:
        raise DegreeMismatchError(f"degree {a.degree} vs degree {b.degree}")
    is_sub = a.is_subgroup_of(b)
    if not is_sub:
        return SubgroupRelation(False, False, None)
    index = b.order() // a.order()
    return SubgroupRelation(True, index == 1, index)


def intersection(a: PermGroup, b: PermGroup) -> PermGroup:
    """Intersection, by element filter when the smaller group fits under
    the element guard and by chain backtracking otherwise."""
    if a.degree != b.degree:
        raise DegreeMismatchError(f"degree {a.degree} vs degree {b.degree}")
    small, big = (a, b) if a.order() <= b.order() else (b, a)
    if small.order() <= guards().elements:
        return small._grown(
            img for img in small.element_images() if big.contains_images(img)
        )
    return _intersection_backtrack(small, big)


def _intersection_backtrack(a: PermGroup, b: PermGroup) -> PermGroup:
    """Backtrack over a's chain, pruning partial base images that no
    element of b can realize."""
    chain = a.chain()
    bases = chain.base()
    prefix = list(bases) + [x for x in range(a.degree) if x not in set(bases)]
    rank = [0] * a.degree
    for i, x in enumerate(prefix):
        rank[x] = i
    b_chain = _Chain(b.degree, b.gen_images(), rank=rank)
    hits: list[tuple] = []

    def rec(i: int, partial: tuple, b_level: int, b_partial: tuple) -> None:
        if i == len(bases):
            if b.contains_images(partial):
                hits.append(partial)
            return
        lvl = chain.levels[i]
        for point in sorted(lvl.orbit):
            u = lvl.transversal[point]
            nxt = kernels.compose(u, partial)
            target = nxt[bases[i]]
            # Extend the b-side witness: some element of b must map each
            # assigned base point the same way the candidate does.  The
            # levels of b's re-based chain appear in the same point order
            # as a's bases, so at most one level is consumed per step.
            j = b_level
            b_next = b_partial
            if j < len(b_chain.levels) and b_chain.levels[j].base == bases[i]:
                want = kernels.inverse(b_next)[target]
                u_b = b_chain.levels[j].transversal.get(want)
                if u_b is None:
                    continue
                b_next = kernels.compose(u_b, b_next)
                j += 1
            elif b_next[bases[i]] != target:
                # b's remaining subgroup fixes this point, no freedom left.
                continue
            rec(i + 1, nxt, j, b_next)

    ident = tuple(range(a.degree))
    rec(0, ident, 0, ident)
    return a._grown(iter(hits))


def commutator_subgroup(a: PermGroup, b: PermGroup) -> PermGroup:
    """Subgroup generated by all commutators [x, y], x in a, y in b.

    Computed as the normal closure, in the join of a and b, of the
    commutators of the generators.
    """
    if a.degree != b.degree:
        raise DegreeMismatchError(f"degree {a.degree} vs degree {b.degree}")
    ambient = a.join(b)
    comms = []
    for x in a.generators:
        for y in b.generators:
            c = x.inverse() * y.inverse() * x * y
            if not c.is_identity():
                comms.append(c)
    return ambient.normal_closure(comms)


def derived_subgroup(g: PermGroup) -> PermGroup:
    return commutator_subgroup(g, g)


# -- standard construction helpers ---------------------------------------


def trivial_group(degree: int) -> PermGroup:
    return PermGroup((), degree=degree)


def symmetric_group(n: int) -> PermGroup:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles(n, [(0, 1)]))
    if n >= 3:
        gens.append(Permutation.from_cycles(n, [tuple(range(n))]))
    return PermGroup(gens, degree=n)


def alternating_group(n: int) -> PermGroup:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    gens = []
    if n >= 3:
        gens.append(Permutation.from_cycles(n, [(0, 1, 2)]))
    if n >= 4:
        cycle = tuple(range(n)) if n % 2 == 1 else tuple(range(1, n))
        gens.append(Permutation.from_cycles(n, [cycle]))
    return PermGroup(gens, degree=n)


def cyclic_group(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return trivial_group(1)
    return PermGroup([Permutation.from_cycles(n, [tuple(range(n))])], degree=n)


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of a regular n-gon acting on its vertices (order 2n)."""
    if n < 3:
        raise ValueError("need at least 3 vertices")
    rot = Permutation.from_cycles(n, [tuple(range(n))])
    ref = Permutation([(n - x) % n for x in range(n)])
    return PermGroup([rot, ref], degree=n)


def direct_sum_gens(
    left_degree: int, right_degree: int, left: Iterable[Permutation], right: Iterable[Permutation]
) -> list[Permutation]:
    """Generators of the direct product acting on the disjoint union."""
    ident_l = tuple(range(left_degree))
    ident_r = tuple(range(right_degree))
    out = []
    for g in left:
        out.append(
            Permutation._raw(g.images + tuple(left_degree + x for x in ident_r))
        )
    for h in right:
        out.append(
            Permutation._raw(ident_l + tuple(left_degree + x for x in h.images))
        )
    return out
