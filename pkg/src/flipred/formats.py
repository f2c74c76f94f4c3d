"""Text formats for triangulations (``.ltri``) and flip sequences (``.flipseq``).

``.ltri``::

    ltri 1
    setting convex
    vertices 4
    0 0
    1 1
    2 4
    3 9
    edges 5
    0 0 1
    ...
    faces 2
    +0 +1 -4
    ...

Coordinates are omitted in the combinatorial setting (only the count is
written). Edge lines are ``label va vb`` with ``va < vb``. A face lists its
three edge labels counter-clockwise; ``+`` means the edge is walked from
``va`` to ``vb``, ``-`` the other way. The sign is always written because
label 0 exists.

``.flipseq``::

    flipseq 1 3
    5 6 5

Serialization is canonical: edges by ascending label, each face rotated to
start at its smallest label, faces sorted.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .triangulation import LabeledTriangulation, Setting, TriangulationError


class FormatError(ValueError):
    """Malformed input; ``line`` is 1-based, 0 when the file ended early."""

    def __init__(self, message: str, line: int = 0, source: str | None = None):
        where = f"{source or '<input>'}:{line}" if line else (source or "<input>")
        super().__init__(f"{where}: {message}")
        self.line = line
        self.source = source


class _Lines:
    # skips blank lines and '#' comments, remembers line numbers
    def __init__(self, text: str, source: str | None):
        self.items = []
        for k, raw in enumerate(text.splitlines(), 1):
            body = raw.split("#", 1)[0].strip()
            if body:
                self.items.append((k, body.split()))
        self.pos = 0
        self.source = source

    def next(self, what: str) -> tuple[int, list[str]]:
        if self.pos >= len(self.items):
            raise FormatError(f"unexpected end of file, expected {what}", 0, self.source)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def error(self, message: str, line: int) -> FormatError:
        return FormatError(message, line, self.source)

    def ints(self, line: int, tokens: list[str], count: int, what: str) -> list[int]:
        if len(tokens) != count:
            raise self.error(f"expected {count} integers for {what}, got {len(tokens)} tokens", line)
        try:
            return [int(t) for t in tokens]
        except ValueError:
            raise self.error(f"non-integer value in {what}", line) from None

    def header(self, keyword: str) -> tuple[int, int]:
        line, tok = self.next(f"'{keyword} <count>'")
        if len(tok) != 2 or tok[0] != keyword:
            raise self.error(f"expected '{keyword} <count>'", line)
        try:
            count = int(tok[1])
        except ValueError:
            raise self.error(f"bad {keyword} count {tok[1]!r}", line) from None
        if count < 0:
            raise self.error(f"negative {keyword} count", line)
        return line, count

    def done(self) -> None:
        if self.pos < len(self.items):
            line, _ = self.items[self.pos]
            raise self.error("trailing content", line)


def _face_token(label: int, forward: bool) -> str:
    return f"{'+' if forward else '-'}{label}"


def canonical_faces(T: LabeledTriangulation) -> list[tuple[tuple[int, bool], ...]]:
    out = []
    for face in T.signed_faces():
        k = min(range(3), key=lambda m: face[m][0])
        out.append(face[k:] + face[:k])
    return sorted(out)


def dumps_ltri(T: LabeledTriangulation) -> str:
    lines = ["ltri 1", f"setting {T.setting.value}", f"vertices {T.vertex_count}"]
    if T.setting is not Setting.COMBINATORIAL:
        lines += [f"{x} {y}" for x, y in T.coords]
    emap = T.edge_map()
    lines.append(f"edges {len(emap)}")
    lines += [f"{lab} {a} {b}" for lab, (a, b) in sorted(emap.items())]
    faces = canonical_faces(T)
    lines.append(f"faces {len(faces)}")
    lines += [" ".join(_face_token(lab, fwd) for lab, fwd in face) for face in faces]
    return "\n".join(lines) + "\n"


def loads_ltri(text: str, source: str | None = None, *, full_check: bool = False) -> LabeledTriangulation:
    """Parse and validate a ``.ltri`` document."""
    r = _Lines(text, source)
    line, tok = r.next("'ltri 1'")
    if tok != ["ltri", "1"]:
        raise r.error("expected header 'ltri 1'", line)
    line, tok = r.next("'setting <name>'")
    if len(tok) != 2 or tok[0] != "setting":
        raise r.error("expected 'setting <convex|geometric|combinatorial>'", line)
    try:
        setting = Setting(tok[1])
    except ValueError:
        raise r.error(f"unknown setting {tok[1]!r}", line) from None
    vline, nv = r.header("vertices")
    if nv < 3:
        raise r.error("a triangulation needs at least 3 vertices", vline)
    coords = None
    if setting is not Setting.COMBINATORIAL:
        coords = []
        for _ in range(nv):
            line, tok = r.next("a coordinate line")
            coords.append(tuple(r.ints(line, tok, 2, "coordinates")))
    eline, ne = r.header("edges")
    edges: dict[int, tuple[int, int]] = {}
    for _ in range(ne):
        line, tok = r.next("an edge line")
        lab, a, b = r.ints(line, tok, 3, "an edge")
        if lab < 0:
            raise r.error(f"negative edge label {lab}", line)
        if lab in edges:
            raise r.error(f"duplicate edge label {lab}", line)
        if not (0 <= a < nv and 0 <= b < nv):
            raise r.error(f"edge {lab} references a vertex outside 0..{nv - 1}", line)
        if a == b:
            raise r.error(f"edge {lab} is a loop", line)
        edges[lab] = (a, b)
    fline, nf = r.header("faces")
    faces = []
    for _ in range(nf):
        line, tok = r.next("a face line")
        if len(tok) != 3:
            raise r.error(f"a face has three signed labels, got {len(tok)}", line)
        face = []
        for t in tok:
            if len(t) < 2 or t[0] not in "+-" or not t[1:].isdigit():
                raise r.error(f"bad signed label {t!r}", line)
            face.append((int(t[1:]), t[0] == "+"))
        if len({lab for lab, _ in face}) != 3:
            raise r.error("a face needs three different edges", line)
        faces.append((line, face))
    r.done()
    # face entries must chain head to tail
    for line, face in faces:
        if any(lab not in edges for lab, _ in face):
            raise r.error("face references an unknown edge", line)
        ends = [(edges[lab] if fwd else edges[lab][::-1]) for lab, fwd in face]
        for k in range(3):
            if ends[k][1] != ends[(k + 1) % 3][0]:
                raise r.error("face edges do not form a closed cycle", line)
    try:
        T = LabeledTriangulation.from_faces(setting, nv, edges, [f for _, f in faces], coords, check=False)
        T.validate(full=full_check)
    except TriangulationError as exc:
        raise FormatError(f"invalid triangulation: {exc}", fline, source) from None
    return T


def dumps_flipseq(seq: Sequence[int]) -> str:
    head = f"flipseq 1 {len(seq)}"
    if not seq:
        return head + "\n"
    return head + "\n" + " ".join(str(int(x)) for x in seq) + "\n"


def loads_flipseq(text: str, source: str | None = None) -> list[int]:
    r = _Lines(text, source)
    line, tok = r.next("'flipseq 1 <count>'")
    if len(tok) != 3 or tok[:2] != ["flipseq", "1"]:
        raise r.error("expected header 'flipseq 1 <count>'", line)
    try:
        count = int(tok[2])
    except ValueError:
        raise r.error(f"bad count {tok[2]!r}", line) from None
    if count < 0:
        raise r.error("negative count", line)
    out: list[int] = []
    last = line
    while r.pos < len(r.items):
        last, tok = r.next("labels")
        for t in tok:
            if not t.isdigit():
                raise r.error(f"bad label {t!r}", last)
            out.append(int(t))
    if len(out) != count:
        raise r.error(f"header announces {count} labels, found {len(out)}", last)
    return out


def read_ltri(path: str | Path, *, full_check: bool = False) -> LabeledTriangulation:
    return loads_ltri(Path(path).read_text(), str(path), full_check=full_check)


def write_ltri(T: LabeledTriangulation, path: str | Path) -> None:
    Path(path).write_text(dumps_ltri(T))


def read_flipseq(path: str | Path) -> list[int]:
    return loads_flipseq(Path(path).read_text(), str(path))


def write_flipseq(seq: Sequence[int], path: str | Path) -> None:
    Path(path).write_text(dumps_flipseq(seq))


def off_to_triangulation(text: str, setting: Setting | str = Setting.GEOMETRIC, source: str | None = None) -> LabeledTriangulation:
    """Minimal OFF reader for planar triangle meshes with integer x, y coordinates.

    The z coordinate is ignored. Faces are reoriented counter-clockwise in
    the geometric and convex settings.
    """
    from .predicates import orient

    setting = Setting(setting)
    r = _Lines(text, source)
    line, tok = r.next("'OFF'")
    if tok[0] != "OFF":
        raise r.error("expected an OFF header", line)
    counts = tok[1:]
    if not counts:
        line, counts = r.next("vertex and face counts")
    if len(counts) < 2:
        raise r.error("expected vertex and face counts", line)
    try:
        nv, nf = int(counts[0]), int(counts[1])
    except ValueError:
        raise r.error("bad OFF counts", line) from None
    coords = []
    for _ in range(nv):
        line, tok = r.next("a vertex line")
        if len(tok) < 2:
            raise r.error("a vertex needs x and y", line)
        try:
            x, y = float(tok[0]), float(tok[1])
        except ValueError:
            raise r.error("bad vertex coordinate", line) from None
        if not (x.is_integer() and y.is_integer()):
            raise r.error("coordinates must be integers", line)
        coords.append((int(x), int(y)))
    tris: list[tuple[int, int, int]] = []
    for _ in range(nf):
        line, tok = r.next("a face line")
        vals = r.ints(line, tok[:4], 4, "a face") if len(tok) >= 4 else r.ints(line, tok, 4, "a face")
        if vals[0] != 3:
            raise r.error("only triangular faces are supported", line)
        a, b, c = vals[1:]
        if setting is not Setting.COMBINATORIAL and orient(coords[a], coords[b], coords[c]) < 0:
            b, c = c, b
        tris.append((a, b, c))
    try:
        return LabeledTriangulation.from_triangles(
            setting, nv, tris, coords=None if setting is Setting.COMBINATORIAL else coords
        )
    except TriangulationError as exc:
        raise FormatError(f"invalid triangulation: {exc}", 0, source) from None

