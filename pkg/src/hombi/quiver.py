"""Quivers, their paths, path ε-bialgebras and induced morphisms.

Text grammar, one declaration per line, ``#`` starts a comment::

    vertex v0
    arrow phi1 : v0 -> v1

and for morphisms::

    vmap v0 -> v0
    amap phi1 -> phi2

A JSON document with ``vertices``/``arrows`` (resp. ``vmap``/``amap``) is
accepted as well. Products concatenate left to right: ``μ(p, q) = pq`` when
the target of ``p`` is the source of ``q``.
"""

from __future__ import annotations

import itertools
import json
import random
import re
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter

from .errors import (
    CyclicQuiverError,
    DanglingReferenceError,
    DuplicateNameError,
    IncompatibleArrowError,
    IncompleteMapError,
    NonInjectiveVertexMapError,
    QuiverSyntaxError,
)
from .linalg import FinSpace, LinMap, fzeros
from .structures import EpsHomBialgebra, StructureMorphism

NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_NAME_RE = re.compile(rf"^{NAME}$")


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        seen: set[str] = set()
        for v in self.vertices:
            if v in seen:
                raise DuplicateNameError(f"vertex {v!r} declared twice")
            seen.add(v)
        for a in self.arrows:
            if a.name in seen:
                raise DuplicateNameError(f"name {a.name!r} declared twice")
            seen.add(a.name)
        vs = set(self.vertices)
        for a in self.arrows:
            for end in (a.source, a.target):
                if end not in vs:
                    raise DanglingReferenceError(f"arrow {a.name!r} refers to unknown vertex {end!r}")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise DanglingReferenceError(f"unknown arrow {name!r}")

    def is_acyclic(self) -> bool:
        try:
            self._order()
        except CyclicQuiverError:
            return False
        return True

    def _order(self) -> tuple[str, ...]:
        graph: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a in self.arrows:
            if a.source == a.target:
                raise CyclicQuiverError()
            graph[a.target].add(a.source)
        try:
            return tuple(TopologicalSorter(graph).static_order())
        except CycleError:
            raise CyclicQuiverError() from None


@dataclass(frozen=True)
class Path:
    """A vertex (length 0) or a composable arrow sequence."""

    vertex: str | None
    arrows: tuple[Arrow, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def source(self) -> str:
        return self.vertex if self.vertex is not None else self.arrows[0].source

    @property
    def target(self) -> str:
        return self.vertex if self.vertex is not None else self.arrows[-1].target

    @property
    def label(self) -> str:
        return self.vertex if self.vertex is not None else ".".join(a.name for a in self.arrows)

    def sort_key(self):
        if self.vertex is not None:
            return (0, (self.vertex,))
        return (self.length, tuple(a.name for a in self.arrows))


def _path(arrows: tuple[Arrow, ...]) -> Path:
    return Path(None, arrows)


@dataclass(frozen=True)
class QuiverMorphism:
    source: Quiver
    target: Quiver
    vertex_map: dict = field(hash=False)
    arrow_map: dict = field(hash=False)

    def __post_init__(self):
        src, dst = self.source, self.target
        for v in src.vertices:
            if v not in self.vertex_map:
                raise IncompleteMapError(f"vertex {v!r} has no image")
        for a in src.arrows:
            if a.name not in self.arrow_map:
                raise IncompleteMapError(f"arrow {a.name!r} has no image")
        for v, w in self.vertex_map.items():
            if v not in src.vertices:
                raise DanglingReferenceError(f"unknown source vertex {v!r}")
            if w not in dst.vertices:
                raise DanglingReferenceError(f"unknown target vertex {w!r}")
        images = list(self.vertex_map.values())
        if len(set(images)) != len(images):
            dup = next(w for w in images if images.count(w) > 1)
            raise NonInjectiveVertexMapError(f"two vertices are sent to {dup!r}")
        for name, img in self.arrow_map.items():
            a = src.arrow(name)
            try:
                b = dst.arrow(img)
            except DanglingReferenceError:
                raise DanglingReferenceError(f"unknown target arrow {img!r}") from None
            if b.source != self.vertex_map[a.source] or b.target != self.vertex_map[a.target]:
                raise IncompatibleArrowError(
                    f"arrow {a.name!r} ({a.source}->{a.target}) cannot go to {b.name!r} ({b.source}->{b.target})"
                )

    @property
    def is_endo(self) -> bool:
        return self.source == self.target

    def is_identity(self) -> bool:
        return (
            self.is_endo
            and all(k == v for k, v in self.vertex_map.items())
            and all(k == v for k, v in self.arrow_map.items())
        )

    def apply(self, p: Path) -> Path:
        if p.vertex is not None:
            return Path(self.vertex_map[p.vertex])
        return _path(tuple(self.target.arrow(self.arrow_map[a.name]) for a in p.arrows))


# ---------------------------------------------------------------- parsing

_VERTEX_RE = re.compile(rf"^vertex\s+(?P<v>{NAME})\s*$")
_ARROW_RE = re.compile(rf"^arrow\s+(?P<name>{NAME})\s*:\s*(?P<src>{NAME})\s*->\s*(?P<tgt>{NAME})\s*$")
_MAP_RE = re.compile(rf"^(?P<kind>vmap|amap)\s+(?P<a>{NAME})\s*->\s*(?P<b>{NAME})\s*$")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if stripped:
            yield lineno, raw, body, stripped


def _syntax_error(raw: str, body: str, lineno: int, expected: str) -> QuiverSyntaxError:
    col = len(body) - len(body.lstrip()) + 1
    # point at the first token that breaks the expected shape
    for m in re.finditer(r"\S+", body):
        col = m.start() + 1
        break
    return QuiverSyntaxError(f"expected {expected}, got {raw.strip()!r}", lineno, col)


def _looks_like_json(text: str) -> bool:
    return text.lstrip().startswith("{")


def parse_quiver(text: str) -> Quiver:
    if _looks_like_json(text):
        return _quiver_from_json(text)
    vertices: list[str] = []
    arrows: list[Arrow] = []
    for lineno, raw, body, stripped in _lines(text):
        keyword = stripped.split()[0]
        if keyword == "vertex":
            m = _VERTEX_RE.match(stripped)
            if not m:
                raise _keyword_error(body, lineno, "vertex <label>")
            vertices.append(m["v"])
        elif keyword == "arrow":
            m = _ARROW_RE.match(stripped)
            if not m:
                raise _keyword_error(body, lineno, "arrow <name> : <src> -> <tgt>")
            arrows.append(Arrow(m["name"], m["src"], m["tgt"]))
        else:
            raise _syntax_error(raw, body, lineno, "'vertex' or 'arrow'")
    if not vertices:
        raise QuiverSyntaxError("a quiver needs at least one vertex", 1, 1)
    return Quiver(tuple(vertices), tuple(arrows))


def _keyword_error(body: str, lineno: int, expected: str) -> QuiverSyntaxError:
    """Locate the first offending token after the keyword."""
    tokens = list(re.finditer(r"->|:|[A-Za-z0-9_']+|\S", body))
    shape = expected.split()
    col = len(body.rstrip()) + 1
    for tok, want in itertools.zip_longest(tokens, shape):
        if tok is None:
            break
        if want is None:
            col = tok.start() + 1
            break
        if want.startswith("<"):
            if not _NAME_RE.match(tok.group()):
                col = tok.start() + 1
                break
        elif tok.group() != want:
            col = tok.start() + 1
            break
    return QuiverSyntaxError(f"expected '{expected}'", lineno, col)


def _quiver_from_json(text: str) -> Quiver:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise QuiverSyntaxError(e.msg, e.lineno, e.colno) from None
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise QuiverSyntaxError("JSON quiver needs a 'vertices' list", 1, 1)
    vertices = doc["vertices"]
    arrows = []
    for item in doc.get("arrows", []):
        try:
            arrows.append(Arrow(item["name"], item["source"], item["target"]))
        except (KeyError, TypeError):
            raise QuiverSyntaxError("each arrow needs 'name', 'source' and 'target'", 1, 1) from None
    for name in list(vertices) + [a.name for a in arrows]:
        if not isinstance(name, str) or not _NAME_RE.match(name):
            raise QuiverSyntaxError(f"invalid name {name!r}", 1, 1)
    if not vertices:
        raise QuiverSyntaxError("a quiver needs at least one vertex", 1, 1)
    return Quiver(tuple(vertices), tuple(arrows))


def parse_quiver_morphism(text: str, src: Quiver, dst: Quiver | None = None) -> QuiverMorphism:
    dst = src if dst is None else dst
    vmap: dict[str, str] = {}
    amap: dict[str, str] = {}
    if _looks_like_json(text):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise QuiverSyntaxError(e.msg, e.lineno, e.colno) from None
        vmap = dict(doc.get("vmap", {}))
        amap = dict(doc.get("amap", {}))
    else:
        for lineno, raw, body, stripped in _lines(text):
            m = _MAP_RE.match(stripped)
            if not m:
                keyword = stripped.split()[0]
                if keyword in ("vmap", "amap"):
                    raise _keyword_error(body, lineno, f"{keyword} <name> -> <name>")
                raise _syntax_error(raw, body, lineno, "'vmap' or 'amap'")
            table = vmap if m["kind"] == "vmap" else amap
            if m["a"] in table:
                raise DuplicateNameError(f"line {lineno}: {m['a']!r} mapped twice")
            table[m["a"]] = m["b"]
    for v in vmap:
        if v not in src.vertices:
            raise DanglingReferenceError(f"unknown vertex {v!r}")
    for a in amap:
        src.arrow(a)
    return QuiverMorphism(src, dst, vmap, amap)


def quiver_to_text(Q: Quiver) -> str:
    lines = [f"vertex {v}" for v in Q.vertices]
    lines += [f"arrow {a.name} : {a.source} -> {a.target}" for a in Q.arrows]
    return "\n".join(lines) + "\n"


def morphism_to_text(m: QuiverMorphism) -> str:
    lines = [f"vmap {k} -> {v}" for k, v in m.vertex_map.items()]
    lines += [f"amap {k} -> {v}" for k, v in m.arrow_map.items()]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- paths and the path ε-bialgebra


def enumerate_paths(Q: Quiver) -> list[Path]:
    """All paths, ordered by length, then lexicographically by arrow names (vertices by label)."""
    Q._order()
    outgoing: dict[str, list[Arrow]] = {v: [] for v in Q.vertices}
    for a in Q.arrows:
        outgoing[a.source].append(a)
    paths = [Path(v) for v in Q.vertices]

    def extend(prefix: tuple[Arrow, ...]):
        paths.append(_path(prefix))
        for b in outgoing[prefix[-1].target]:
            extend(prefix + (b,))

    for a in Q.arrows:
        extend((a,))
    return sorted(paths, key=Path.sort_key)


def paths_by_length(Q: Quiver) -> dict[int, list[Path]]:
    out: dict[int, list[Path]] = {}
    for p in enumerate_paths(Q):
        out.setdefault(p.length, []).append(p)
    return out


def _concat(p: Path, q: Path) -> Path | None:
    if p.target != q.source:
        return None
    if p.vertex is not None:
        return q
    if q.vertex is not None:
        return p
    return _path(p.arrows + q.arrows)


def path_bialgebra(Q: Quiver, name: str = "") -> EpsHomBialgebra:
    paths = enumerate_paths(Q)
    space = FinSpace(tuple(p.label for p in paths))
    index = {p.label: i for i, p in enumerate(paths)}
    n = len(paths)
    mu = fzeros((n, n, n))
    for i, p in enumerate(paths):
        for j, q in enumerate(paths):
            pq = _concat(p, q)
            if pq is not None:
                mu[i, j, index[pq.label]] += 1
    delta = fzeros((n, n, n))
    for k, p in enumerate(paths):
        l = p.length
        if l == 0:
            continue
        arrows = p.arrows
        if l == 1:
            delta[k, index[p.source], index[p.target]] += 1
            continue
        delta[k, index[p.source], index[_path(arrows[1:]).label]] += 1
        delta[k, index[_path(arrows[:-1]).label], index[p.target]] += 1
        for i in range(1, l - 1):
            delta[k, index[_path(arrows[:i]).label], index[_path(arrows[i + 1:]).label]] += 1
    return EpsHomBialgebra(space, mu=mu, delta=delta, name=name, provenance=("quiver-build",))


def induced_map(m: QuiverMorphism) -> LinMap:
    src_paths = enumerate_paths(m.source)
    dst_paths = enumerate_paths(m.target)
    dst_index = {p.label: i for i, p in enumerate(dst_paths)}
    M = fzeros((len(dst_paths), len(src_paths)))
    for j, p in enumerate(src_paths):
        M[dst_index[m.apply(p).label], j] = 1
    src_space = FinSpace(tuple(p.label for p in src_paths))
    dst_space = FinSpace(tuple(p.label for p in dst_paths))
    return LinMap(src_space, M, dst_space)


def induced_morphism(m: QuiverMorphism) -> StructureMorphism:
    return StructureMorphism(path_bialgebra(m.source), path_bialgebra(m.target), induced_map(m))


def quiver_twist(Q: Quiver, m: QuiverMorphism, label: str = "alpha") -> EpsHomBialgebra:
    from .constructions import twist_by_morphism

    if not m.is_endo or m.source != Q:
        raise IncompatibleArrowError("twisting needs an endomorphism of the given quiver")
    return twist_by_morphism(path_bialgebra(Q), induced_map(m), label=label)


# ---------------------------------------------------------------- morphism enumeration and sampling


def enumerate_morphisms(src: Quiver, dst: Quiver | None = None) -> list[QuiverMorphism]:
    """Every vertex-injective, source/target-compatible map ``src -> dst``."""
    dst = src if dst is None else dst
    out = []
    for images in itertools.permutations(dst.vertices, len(src.vertices)):
        vmap = dict(zip(src.vertices, images))
        choices = []
        for a in src.arrows:
            cands = [b.name for b in dst.arrows if b.source == vmap[a.source] and b.target == vmap[a.target]]
            choices.append(cands)
        for combo in itertools.product(*choices):
            amap = {a.name: b for a, b in zip(src.arrows, combo)}
            out.append(QuiverMorphism(src, dst, vmap, amap))
    return out


def random_quiver(rng: random.Random, max_vertices: int = 6, max_arrows: int = 8, prefix: str = "") -> Quiver:
    """A random acyclic quiver (arrows go forward in a hidden random vertex order)."""
    nv = rng.randint(1, max_vertices)
    labels = [f"{prefix}v{i}" for i in range(nv)]
    order = labels[:]
    rng.shuffle(order)
    na = rng.randint(0, max_arrows) if nv > 1 else 0
    arrows = []
    for k in range(na):
        i, j = sorted(rng.sample(range(nv), 2))
        arrows.append(Arrow(f"{prefix}a{k}", order[i], order[j]))
    return Quiver(tuple(labels), tuple(arrows))


def random_morphism(rng: random.Random, max_vertices: int = 5, max_arrows: int = 6) -> QuiverMorphism:
    """A random valid morphism into a random acyclic quiver that contains the image."""
    src = random_quiver(rng, max_vertices, max_arrows)
    if rng.random() < 0.4:
        ends = enumerate_morphisms(src) if len(src.vertices) <= 4 else []
        if ends:
            return rng.choice(ends)
    extra = rng.randint(0, 2)
    nv = len(src.vertices) + extra
    dst_vertices = [f"w{i}" for i in range(nv)]
    vmap = dict(zip(src.vertices, rng.sample(dst_vertices, len(src.vertices))))
    # keep dst acyclic: order dst vertices consistently with a topological order of src
    src_order = list(src._order())
    rank = {vmap[v]: i for i, v in enumerate(src_order)}
    free = [w for w in dst_vertices if w not in rank]
    for w in free:
        rank[w] = rng.uniform(-1, len(src_order))
    dst_arrows: list[Arrow] = []
    amap = {}
    for a in src.arrows:
        s, t = vmap[a.source], vmap[a.target]
        existing = [b for b in dst_arrows if b.source == s and b.target == t]
        if existing and rng.random() < 0.5:
            amap[a.name] = rng.choice(existing).name
        else:
            b = Arrow(f"b{len(dst_arrows)}", s, t)
            dst_arrows.append(b)
            amap[a.name] = b.name
    for _ in range(rng.randint(0, 2)):
        u, w = rng.sample(dst_vertices, 2)
        if rank[u] > rank[w]:
            u, w = w, u
        dst_arrows.append(Arrow(f"b{len(dst_arrows)}", u, w))
    dst = Quiver(tuple(dst_vertices), tuple(dst_arrows))
    return QuiverMorphism(src, dst, vmap, amap)


def path_count(Q: Quiver) -> int:
    return len(enumerate_paths(Q))


def multiplication_is_closed(B: EpsHomBialgebra) -> bool:
    """Each product of two basis paths is 0 or a single basis path with coefficient 1."""
    for i in range(B.dim):
        for j in range(B.dim):
            nz = [v for v in B.mu[i, j] if v != 0]
            if nz and (len(nz) != 1 or nz[0] != 1):
                return False
    return True


__all__ = [
    "Arrow",
    "Quiver",
    "Path",
    "QuiverMorphism",
    "parse_quiver",
    "parse_quiver_morphism",
    "enumerate_paths",
    "paths_by_length",
    "path_bialgebra",
    "induced_map",
    "induced_morphism",
    "quiver_twist",
    "enumerate_morphisms",
    "random_quiver",
    "random_morphism",
]
