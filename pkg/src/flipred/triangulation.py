"""Triangulations with labelled edges.

The connectivity is stored as a half-edge structure over flat integer lists so
that a flip touches a constant number of entries and can be undone by flipping
the same edge again.

Every edge occupies a *slot* ``s`` with half-edges ``2*s`` and ``2*s + 1``.
For a half-edge ``h``:

* ``org[h]`` is its origin vertex (its destination is ``org[h ^ 1]``),
* ``nxt[h]`` is the next half-edge counter-clockwise around its face, or ``-1``
  when ``h`` lies on the outer boundary,
* ``fc[h]`` is the id of its face, or ``-1`` on the boundary.

Edge labels are the public identity of edges; slots are an internal detail.
Face ids are internal too and only stable between flips of other edges.
"""

from __future__ import annotations

import enum
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .predicates import orient, segments_cross


class Setting(str, enum.Enum):
    """Which flips are allowed."""

    CONVEX = "convex"
    GEOMETRIC = "geometric"
    COMBINATORIAL = "combinatorial"


class TriangulationError(ValueError):
    """Raised when a triangulation violates a structural invariant."""


class MissingEdgeError(KeyError):
    """Raised for an edge label that does not exist in the triangulation."""


class FlipError(ValueError):
    """Raised when flipping a non-flippable edge.

    ``reason`` names the violated predicate: ``"boundary"``, ``"same-face"``,
    ``"degenerate"`` (both opposite vertices coincide) or ``"non-convex"``.
    """

    def __init__(self, label: int, reason: str):
        super().__init__(f"edge {label} is not flippable ({reason})")
        self.label = label
        self.reason = reason


@dataclass(frozen=True)
class Support:
    """The faces incident to an edge, with the vertex opposite the edge in each."""

    label: int
    faces: tuple[int, ...]
    triangles: tuple[tuple[int, int, int], ...]
    opposite: tuple[int, ...]


def _rotate_min(t: tuple) -> tuple:
    k = t.index(min(t))
    return t[k:] + t[:k]


class LabeledTriangulation:
    """A mutable triangulation whose edges carry persistent integer labels.

    Use :meth:`from_faces`, :meth:`from_triangles` or :func:`make_fan` to build
    one. ``flip_inplace`` mutates; the module level :func:`flip` returns a copy.
    """

    __slots__ = ("setting", "vertex_count", "coords", "labels", "_slot", "org", "nxt", "fc")

    def __init__(
        self,
        setting: Setting,
        vertex_count: int,
        labels: list[int],
        org: list[int],
        nxt: list[int],
        fc: list[int],
        coords: list[tuple[int, int]] | None = None,
        *,
        check: bool = True,
    ):
        self.setting = Setting(setting)
        self.vertex_count = vertex_count
        self.coords = coords
        self.labels = labels
        self._slot = {lab: s for s, lab in enumerate(labels)}
        self.org = org
        self.nxt = nxt
        self.fc = fc
        if check:
            self.validate()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_faces(
        cls,
        setting: Setting | str,
        vertex_count: int,
        edges: Mapping[int, tuple[int, int]],
        faces: Iterable[Sequence[tuple[int, bool]]],
        coords: Sequence[tuple[int, int]] | None = None,
        *,
        check: bool = True,
    ) -> "LabeledTriangulation":
        """Build from edge endpoints and faces given as label/direction triples.

        ``edges[label] = (va, vb)``; a face entry ``(label, True)`` traverses the
        edge from ``va`` to ``vb``. Faces must be listed counter-clockwise.
        """
        labels = sorted(edges)
        slot = {lab: s for s, lab in enumerate(labels)}
        m = 2 * len(labels)
        org = [0] * m
        nxt = [-1] * m
        fc = [-1] * m
        for s, lab in enumerate(labels):
            a, b = edges[lab]
            org[2 * s], org[2 * s + 1] = int(a), int(b)
        for f, face in enumerate(faces):
            face = list(face)
            if len(face) != 3:
                raise TriangulationError(f"face {f} does not have three edges")
            hs = []
            for lab, forward in face:
                if lab not in slot:
                    raise TriangulationError(f"face {f} references unknown edge {lab}")
                h = 2 * slot[lab] + (0 if forward else 1)
                if fc[h] != -1:
                    raise TriangulationError(f"edge {lab} traversed twice in the same direction")
                hs.append(h)
            for k in range(3):
                nxt[hs[k]] = hs[(k + 1) % 3]
                fc[hs[k]] = f
        pts = None if coords is None else [(int(x), int(y)) for x, y in coords]
        return cls(setting, vertex_count, labels, org, nxt, fc, pts, check=check)

    @classmethod
    def from_triangles(
        cls,
        setting: Setting | str,
        vertex_count: int,
        triangles: Iterable[Sequence[int]],
        labels: Mapping[tuple[int, int], int] | None = None,
        coords: Sequence[tuple[int, int]] | None = None,
        *,
        check: bool = True,
    ) -> "LabeledTriangulation":
        """Build from counter-clockwise vertex triples (no parallel edges).

        ``labels`` maps sorted vertex pairs to edge labels; by default edges
        are numbered in sorted pair order.
        """
        triangles = [tuple(int(v) for v in t) for t in triangles]
        pairs = sorted({tuple(sorted((t[k], t[(k + 1) % 3]))) for t in triangles for k in range(3)})
        if labels is None:
            labels = {p: n for n, p in enumerate(pairs)}
        edges = {}
        for p in pairs:
            if p not in labels:
                raise TriangulationError(f"no label for edge {p}")
            edges[labels[p]] = p
        if len(edges) != len(pairs):
            raise TriangulationError("edge labels are not unique")
        faces = []
        for t in triangles:
            face = []
            for k in range(3):
                u, v = t[k], t[(k + 1) % 3]
                face.append((labels[tuple(sorted((u, v)))], u < v))
            faces.append(face)
        return cls.from_faces(setting, vertex_count, edges, faces, coords, check=check)

    def copy(self) -> "LabeledTriangulation":
        new = object.__new__(LabeledTriangulation)
        new.setting = self.setting
        new.vertex_count = self.vertex_count
        new.coords = self.coords
        new.labels = list(self.labels)
        new._slot = dict(self._slot)
        new.org = list(self.org)
        new.nxt = list(self.nxt)
        new.fc = list(self.fc)
        return new

    # -- queries ------------------------------------------------------------

    def __contains__(self, label: int) -> bool:
        return label in self._slot

    def __repr__(self) -> str:
        return (
            f"LabeledTriangulation({self.setting.value}, vertices={self.vertex_count}, "
            f"edges={len(self.labels)})"
        )

    @property
    def edge_count(self) -> int:
        return len(self.labels)

    def slot(self, label: int) -> int:
        try:
            return self._slot[label]
        except KeyError:
            raise MissingEdgeError(label) from None

    def edge_labels(self) -> list[int]:
        return sorted(self.labels)

    def is_boundary(self, label: int) -> bool:
        s = self.slot(label)
        return self.nxt[2 * s] < 0 or self.nxt[2 * s + 1] < 0

    def interior_labels(self) -> list[int]:
        nxt = self.nxt
        return sorted(lab for s, lab in enumerate(self.labels) if nxt[2 * s] >= 0 and nxt[2 * s + 1] >= 0)

    def boundary_labels(self) -> list[int]:
        nxt = self.nxt
        return sorted(lab for s, lab in enumerate(self.labels) if nxt[2 * s] < 0 or nxt[2 * s + 1] < 0)

    def endpoints(self, label: int) -> tuple[int, int]:
        s = self.slot(label)
        a, b = self.org[2 * s], self.org[2 * s + 1]
        return (a, b) if a < b else (b, a)

    def edge_map(self) -> dict[int, tuple[int, int]]:
        return {lab: self.endpoints(lab) for lab in self.labels}

    def _face_cycles(self) -> list[tuple[int, int, int]]:
        seen = set()
        cycles = []
        nxt = self.nxt
        for h in range(len(nxt)):
            if nxt[h] < 0 or h in seen:
                continue
            h1 = nxt[h]
            h2 = nxt[h1]
            seen.update((h, h1, h2))
            cycles.append((h, h1, h2))
        return cycles

    @property
    def face_count(self) -> int:
        return len(self._face_cycles())

    def triangles(self) -> list[tuple[int, int, int]]:
        """Oriented vertex triples of all faces, rotated to start at the smallest vertex."""
        org = self.org
        return sorted(_rotate_min(tuple(org[h] for h in cyc)) for cyc in self._face_cycles())

    def labeled_faces(self) -> list[tuple[tuple[int, int], ...]]:
        """Faces as cycles of ``(label, origin vertex)`` starting at the smallest label."""
        org, labels = self.org, self.labels
        out = []
        for cyc in self._face_cycles():
            out.append(_rotate_min(tuple((labels[h >> 1], org[h]) for h in cyc)))
        return sorted(out)

    def signed_faces(self) -> list[tuple[tuple[int, bool], ...]]:
        """Faces as label/direction triples; ``True`` means traversed from the smaller endpoint."""
        org, labels = self.org, self.labels
        out = []
        for cyc in self._face_cycles():
            face = tuple((labels[h >> 1], org[h] < org[h ^ 1]) for h in cyc)
            out.append(_rotate_min(face))
        return sorted(out)

    def vertex_degree(self, v: int) -> int:
        return sum(1 for h in range(0, len(self.org), 2) if v in (self.org[h], self.org[h + 1]))

    def quad_labels(self, label: int) -> list[int]:
        """Labels of the other edges of the faces incident to ``label``."""
        s = self.slot(label)
        nxt, labels = self.nxt, self.labels
        out = []
        for h in (2 * s, 2 * s + 1):
            if nxt[h] >= 0:
                out.append(labels[nxt[h] >> 1])
                out.append(labels[nxt[nxt[h]] >> 1])
        return out

    # -- flips -----------------------------------------------------------------

    def flip_obstruction(self, label: int) -> str | None:
        """Return why ``label`` cannot be flipped, or ``None`` if it can."""
        return self._obstruction(self.slot(label))

    def _obstruction(self, s: int) -> str | None:
        nxt, org = self.nxt, self.org
        h, t = 2 * s, 2 * s + 1
        if nxt[h] < 0 or nxt[t] < 0:
            return "boundary"
        if self.fc[h] == self.fc[t]:
            return "same-face"
        c = org[nxt[nxt[h]]]
        d = org[nxt[nxt[t]]]
        if c == d:
            return "degenerate"
        if self.setting is Setting.GEOMETRIC:
            xy = self.coords
            a, b = org[h], org[t]
            o1 = orient(xy[c], xy[d], xy[a])
            o2 = orient(xy[c], xy[d], xy[b])
            o3 = orient(xy[a], xy[b], xy[c])
            o4 = orient(xy[a], xy[b], xy[d])
            if not ((o1 > 0 > o2 or o1 < 0 < o2) and (o3 > 0 > o4 or o3 < 0 < o4)):
                return "non-convex"
        return None

    def flippable(self, label: int) -> bool:
        return self._obstruction(self.slot(label)) is None

    def _flip(self, s: int) -> None:
        # faces (a,b,c) and (b,a,d) across edge a-b become (c,d,b) and (d,c,a)
        org, nxt, fc = self.org, self.nxt, self.fc
        h, t = 2 * s, 2 * s + 1
        h1 = nxt[h]
        h2 = nxt[h1]
        t1 = nxt[t]
        t2 = nxt[t1]
        org[h] = org[h2]
        org[t] = org[t2]
        nxt[h] = t2
        nxt[t2] = h1
        nxt[h1] = h
        nxt[t] = h2
        nxt[h2] = t1
        nxt[t1] = t
        fc[t2] = fc[h]
        fc[h2] = fc[t]

    def flip_inplace(self, label: int) -> None:
        """Flip ``label`` in place; flipping it again restores the triangulation."""
        s = self.slot(label)
        reason = self._obstruction(s)
        if reason is not None:
            raise FlipError(label, reason)
        self._flip(s)

    def support(self, label: int) -> Support:
        s = self.slot(label)
        org, nxt, fc = self.org, self.nxt, self.fc
        faces, tris, opp = [], [], []
        for h in (2 * s, 2 * s + 1):
            if nxt[h] < 0:
                continue
            h1 = nxt[h]
            h2 = nxt[h1]
            faces.append(fc[h])
            tris.append(_rotate_min((org[h], org[h1], org[h2])))
            opp.append(org[h2])
        return Support(label, tuple(faces), tuple(tris), tuple(opp))

    def overlap(self, i: int, j: int) -> int:
        """Number of faces shared by the supports of ``i`` and ``j`` (2 when ``i == j``)."""
        si, sj = self.slot(i), self.slot(j)
        if si == sj:
            return 2
        return self._overlap(si, sj)

    def _overlap(self, si: int, sj: int) -> int:
        fc = self.fc
        fi = {fc[2 * si], fc[2 * si + 1]}
        fi.discard(-1)
        n = 0
        for h in (2 * sj, 2 * sj + 1):
            if fc[h] >= 0 and fc[h] in fi:
                n += 1
        return n

    def transpose_inplace(self, i: int, j: int) -> None:
        si, sj = self.slot(i), self.slot(j)
        self.labels[si], self.labels[sj] = j, i
        self._slot[i], self._slot[j] = sj, si

    # -- validation ---------------------------------------------------------

    def validate(self, full: bool = False) -> None:
        """Check structural invariants; ``full`` adds the quadratic non-crossing test."""
        org, nxt, fc = self.org, self.nxt, self.fc
        m = len(org)
        V = self.vertex_count
        if len(set(self.labels)) != len(self.labels):
            raise TriangulationError("duplicate edge labels")
        if any(lab < 0 for lab in self.labels):
            raise TriangulationError("edge labels must be non-negative")
        if V < 3:
            raise TriangulationError("a triangulation needs at least 3 vertices")
        if not (len(nxt) == len(fc) == m == 2 * len(self.labels)):
            raise TriangulationError("inconsistent half-edge arrays")
        used = set()
        for s in range(m // 2):
            a, b = org[2 * s], org[2 * s + 1]
            lab = self.labels[s]
            if not (0 <= a < V and 0 <= b < V):
                raise TriangulationError(f"edge {lab} has a vertex out of range")
            if a == b:
                raise TriangulationError(f"edge {lab} is a loop")
            if nxt[2 * s] < 0 and nxt[2 * s + 1] < 0:
                raise TriangulationError(f"edge {lab} has no incident face")
            used.update((a, b))
        if len(used) != V:
            raise TriangulationError("some vertices have no incident edge")
        face_ids = set()
        for cyc in self._face_cycles():
            h, h1, h2 = cyc
            if nxt[h2] != h:
                raise TriangulationError("a face is not a triangle")
            if len({h >> 1, h1 >> 1, h2 >> 1}) != 3:
                raise TriangulationError("a face is not incident to three different edges")
            f = fc[h]
            if f < 0 or fc[h1] != f or fc[h2] != f or f in face_ids:
                raise TriangulationError("inconsistent face ids")
            face_ids.add(f)
            for x in cyc:
                if org[nxt[x]] != org[x ^ 1]:
                    raise TriangulationError(f"edge {self.labels[x >> 1]} does not connect to the next edge of its face")
        for h in range(m):
            if nxt[h] < 0 and fc[h] != -1:
                raise TriangulationError("boundary half-edge with a face id")
        self._validate_connected()
        if self.setting is Setting.COMBINATORIAL:
            return
        xy = self.coords
        if xy is None or len(xy) != V:
            raise TriangulationError(f"{self.setting.value} triangulations need coordinates for every vertex")
        for t in self.triangles():
            if orient(xy[t[0]], xy[t[1]], xy[t[2]]) <= 0:
                raise TriangulationError(f"face {t} is not counter-clockwise")
        if self.setting is Setting.CONVEX:
            self._validate_convex_boundary()
        if full:
            segs = [self.endpoints(lab) for lab in self.labels]
            for k in range(len(segs)):
                p, q = segs[k]
                for n in range(k + 1, len(segs)):
                    r, s = segs[n]
                    if segments_cross(xy[p], xy[q], xy[r], xy[s]):
                        raise TriangulationError(f"edges {segs[k]} and {segs[n]} cross")

    def _validate_connected(self) -> None:
        cycles = self._face_cycles()
        if not cycles:
            raise TriangulationError("no faces")
        nxt = self.nxt
        start = cycles[0][0]
        seen = {start, nxt[start], nxt[nxt[start]]}
        queue = deque([start])
        while queue:
            h = queue.popleft()
            for x in (h, nxt[h], nxt[nxt[h]]):
                y = x ^ 1
                if nxt[y] >= 0 and y not in seen:
                    seen.add(y)
                    seen.add(nxt[y])
                    seen.add(nxt[nxt[y]])
                    queue.append(y)
        if len(seen) != 3 * len(cycles):
            raise TriangulationError("faces are not connected")

    def _validate_convex_boundary(self) -> None:
        org, nxt = self.org, self.nxt
        succ = {}
        for h in range(len(org)):
            if nxt[h] < 0:
                # boundary half-edge runs clockwise; its twin is on the face side
                succ[org[h ^ 1]] = org[h]
        if len(succ) != self.vertex_count:
            raise TriangulationError("a convex polygon has every vertex on its boundary")
        v, n = 0, 0
        while True:
            v = succ[v]
            n += 1
            if v == 0 or n > self.vertex_count:
                break
        if n != self.vertex_count:
            raise TriangulationError("boundary of a convex polygon is a single cycle")
        xy = self.coords
        for u, w in succ.items():
            x = succ[w]
            if orient(xy[u], xy[w], xy[x]) <= 0:
                raise TriangulationError("boundary polygon is not strictly convex")


# -- module level operations -------------------------------------------------


def parabola_coords(n: int) -> list[tuple[int, int]]:
    """Integer points in strictly convex, counter-clockwise position."""
    return [(k, k * k) for k in range(n)]


def make_fan(n: int, apex: int = 0) -> LabeledTriangulation:
    """Fan triangulation of a convex ``n``-gon with every diagonal at ``apex``.

    Boundary edge ``(k, k+1 mod n)`` gets label ``k``; the diagonals get labels
    ``n .. 2n-4`` in increasing order of their other endpoint.
    """
    if n < 3:
        raise ValueError(f"a polygon needs at least 3 vertices, got {n}")
    if not 0 <= apex < n:
        raise ValueError(f"apex {apex} is not a vertex of the {n}-gon")
    labels = {tuple(sorted((k, (k + 1) % n))): k for k in range(n)}
    others = sorted(v for v in range(n) if v not in (apex, (apex + 1) % n, (apex - 1) % n))
    for k, v in enumerate(others):
        labels[tuple(sorted((apex, v)))] = n + k
    tris = [(apex, (apex + k) % n, (apex + k + 1) % n) for k in range(1, n - 1)]
    return LabeledTriangulation.from_triangles(Setting.CONVEX, n, tris, labels, parabola_coords(n))


def polygon_triangles(n: int, chords: Iterable[tuple[int, int]]) -> list[tuple[int, int, int]]:
    """Counter-clockwise faces of the convex ``n``-gon triangulated by ``chords``."""
    adj = {v: {(v - 1) % n, (v + 1) % n} for v in range(n)}
    for a, b in chords:
        adj[a].add(b)
        adj[b].add(a)
    tris = set()
    for a in range(n):
        for b in adj[a]:
            if b <= a:
                continue
            for c in adj[a] & adj[b]:
                if c > b:
                    tris.add((a, b, c))
    # every triple of a convex polygon in increasing order is counter-clockwise
    return sorted(tris)


def from_chords(
    n: int,
    chords: Iterable[tuple[int, int]],
    labels: Mapping[tuple[int, int], int] | None = None,
) -> LabeledTriangulation:
    """Labelled convex ``n``-gon triangulation with the given diagonals.

    Without ``labels``, boundary edge ``(k, k+1 mod n)`` is ``k`` and the
    diagonals take ``n, n+1, ...`` in sorted order.
    """
    chords = sorted(tuple(sorted(c)) for c in chords)
    if len(chords) != n - 3:
        raise TriangulationError(f"a triangulated {n}-gon has {n - 3} diagonals, got {len(chords)}")
    if labels is None:
        labels = {tuple(sorted((k, (k + 1) % n))): k for k in range(n)}
        for k, c in enumerate(chords):
            labels[c] = n + k
    else:
        labels = {tuple(sorted(p)): lab for p, lab in labels.items()}
    tris = polygon_triangles(n, chords)
    if len(tris) != n - 2:
        raise TriangulationError("chords do not triangulate the polygon")
    return LabeledTriangulation.from_triangles(Setting.CONVEX, n, tris, labels, parabola_coords(n))


def flippable(T: LabeledTriangulation, i: int) -> bool:
    return T.flippable(i)


def flip(T: LabeledTriangulation, i: int) -> LabeledTriangulation:
    """Return a copy of ``T`` with edge ``i`` flipped; ``i`` keeps its label."""
    out = T.copy()
    out.flip_inplace(i)
    return out


def support(T: LabeledTriangulation, i: int) -> Support:
    return T.support(i)


def support_overlap(T: LabeledTriangulation, i: int, j: int) -> int:
    return T.overlap(i, j)


def transpose_labels(T: LabeledTriangulation, i: int, j: int) -> LabeledTriangulation:
    """Exchange the labels of edges ``i`` and ``j`` without touching connectivity."""
    out = T.copy()
    out.transpose_inplace(i, j)
    return out


def strong_equal(T1: LabeledTriangulation, T2: LabeledTriangulation) -> bool:
    """Identical labelled triangulations: same labelled edges and labelled faces."""
    if T1.vertex_count != T2.vertex_count or T1.setting is not T2.setting:
        return False
    if T1.edge_map() != T2.edge_map():
        return False
    return T1.labeled_faces() == T2.labeled_faces()


def weak_equal(T1: LabeledTriangulation, T2: LabeledTriangulation) -> bool:
    """Identical triangulations once edge labels are erased (vertex ids are kept)."""
    if T1.vertex_count != T2.vertex_count or T1.setting is not T2.setting:
        return False
    if T1.edge_count != T2.edge_count:
        return False
    if T1.setting is Setting.COMBINATORIAL:
        return canonical_code(T1) == canonical_code(T2)
    if Counter(T1.edge_map().values()) != Counter(T2.edge_map().values()):
        return False
    return T1.triangles() == T2.triangles()


def canonical_code(T: LabeledTriangulation) -> tuple:
    """Label-free encoding of ``T``; equal codes mean weakly equal triangulations.

    Breadth-first traversal of the faces from every half-edge whose face reads
    the smallest oriented vertex triple; edges are numbered by discovery order
    so parallel edges stay distinguishable. The minimum over those starts is
    returned.
    """
    org, nxt = T.org, T.nxt
    best_triple = None
    starts = []
    for h in range(len(org)):
        if nxt[h] < 0:
            continue
        tri = (org[h], org[nxt[h]], org[nxt[nxt[h]]])
        if best_triple is None or tri < best_triple:
            best_triple, starts = tri, [h]
        elif tri == best_triple:
            starts.append(h)
    best = None
    for h0 in starts:
        code = _bfs_code(org, nxt, h0)
        if best is None or code < best:
            best = code
    return tuple(best or ())


def _bfs_code(org: list[int], nxt: list[int], h0: int) -> list[tuple[int, ...]]:
    edge_id: dict[int, int] = {}
    visited = {h0}
    queue = deque([h0])
    code = []
    while queue:
        h = queue.popleft()
        row = []
        for x in (h, nxt[h], nxt[nxt[h]]):
            e = x >> 1
            if e not in edge_id:
                edge_id[e] = len(edge_id)
            row.append(org[x])
            row.append(edge_id[e])
            y = x ^ 1
            if nxt[y] >= 0 and y not in visited and nxt[y] not in visited and nxt[nxt[y]] not in visited:
                visited.add(y)
                queue.append(y)
        code.append(tuple(row))
    return code
