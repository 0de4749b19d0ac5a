"""The session file format: parsing and serialization.

A session is line oriented.  The first non-comment line is the header
`relhom-session 1`; `#` starts a comment.  Declarations:

    ring ZZ/4                        (ZZ, ZZ/n, Fp, Fp[t]/(f), products "A x B")
    option depth 8                   (also window LO:HI, seed S, cap N)
    module M = cyclic 2              (also: free n, zero, present g [[...]])
    map f : M -> N = [[1], [0]]      (columns are images of source generators)
    class I = primes 2               (also: all, none, generators M N ...)
    complex X                        (block, closed by "end")
      deg 0 M
      deg -1 N
      d 0 f
      bound 0                        (optional: an object of Ch<=0)
    end
    chainmap g : X -> Y              (block: "deg i f" lines, closed by "end")
    tower T = tow X 4
    task resolve M I                 (one task per line, run in order)

Matrices are bracketed rows; entries are integers, polynomials in t, or
tuples "(a, b)" over product rings.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field

from .complexes import ChainComplex, ChainMap
from .exact_linalg import (ExactMatrix, Integers, IntegersMod, PolyDomain, PrimeField, ProductRing,
                           QuotientPoly, RingSpec, poly_str)
from .injclass import InjectiveClass, make_ideal
from .modules import FPModule, IllDefinedMorphism, ModMorphism

HEADER = "relhom-session 1"

TASKS = ("resolve", "homology", "factorize", "lift", "approximate", "tower-factorize", "ab4",
         "cech", "hull", "local-bound", "check-axioms")


class SessionError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass
class Task:
    kind: str
    args: list
    line: int


@dataclass
class Session:
    ring: RingSpec
    objects: dict = field(default_factory=dict)
    kinds: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)
    options: dict = field(default_factory=dict)

    def get(self, name, kind, line):
        if name not in self.objects:
            raise SessionError(line, f"unresolved name {name!r}")
        if kind is not None and self.kinds[name] not in (kind if isinstance(kind, tuple) else (kind,)):
            raise SessionError(line, f"{name!r} is a {self.kinds[name]}, expected {kind}")
        return self.objects[name]


DEFAULT_OPTIONS = {"window": (-8, 8), "depth": 8, "seed": 0, "cap": 64}


# ---------------------------------------------------------------------------
# rings and elements


def parse_ring(text: str) -> RingSpec:
    text = text.strip()
    parts = [p.strip() for p in text.split(" x ")]
    if len(parts) > 1:
        return ProductRing([parse_ring(p) for p in parts])
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1].strip()
    if text == "ZZ":
        return Integers()
    m = re.fullmatch(r"ZZ/(\d+)", text)
    if m:
        return IntegersMod(int(m.group(1)))
    m = re.fullmatch(r"F(\d+)", text)
    if m:
        return PrimeField(int(m.group(1)))
    m = re.fullmatch(r"F(\d+)\[t\]/\((.*)\)", text)
    if m:
        p = int(m.group(1))
        return QuotientPoly(p, parse_poly(m.group(2), p))
    raise ValueError(f"unknown ring {text!r}")


def parse_poly(text: str, p: int) -> tuple:
    text = text.replace(" ", "").replace("-", "+-")
    coeffs = {}
    for term in filter(None, text.split("+")):
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("-")
        if "t" in term:
            c, _, e = term.partition("t")
            c = c.rstrip("*") or "1"
            e = e.lstrip("^") or "1"
            deg, coef = int(e), int(c)
        else:
            deg, coef = 0, int(term)
        coeffs[deg] = coeffs.get(deg, 0) + sign * coef
    if not coeffs:
        return ()
    out = [0] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c % p
    return PolyDomain(p).trim(out)


def parse_element(R: RingSpec, node):
    if R.is_product:
        if not isinstance(node, list) or len(node) != len(R.parts):
            raise ValueError(f"expected a tuple of {len(R.parts)} entries")
        return tuple(parse_element(r, x) for r, x in zip(R.parts, node))
    if isinstance(node, list):
        raise ValueError("unexpected tuple")
    if R.kind == "QuotientPoly":
        return R.reduce(parse_poly(node, R.p))
    return R.from_int(int(node))


def format_element(R: RingSpec, a) -> str:
    if R.is_product:
        return "(" + ", ".join(format_element(r, x) for r, x in zip(R.parts, a)) + ")"
    if R.kind == "QuotientPoly":
        return poly_str(a).replace(" ", "")
    return str(a)


_TOKEN = re.compile(r"\s*([\[\](),]|[^\[\](),]+)")


def _tokens(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot read {text[pos:]!r}")
        tok = m.group(1).strip()
        if tok:
            out.append(tok)
        pos = m.end()
    return out


def _nested(tokens):
    """Bracketed lists and parenthesized tuples as nested Python lists; the
    tuple marker is kept so elements and rows can be told apart."""
    pos = 0

    def node():
        nonlocal pos
        tok = tokens[pos]
        if tok in "[(":
            close = "]" if tok == "[" else ")"
            pos += 1
            items = []
            while tokens[pos] != close:
                items.append(node())
                if tokens[pos] == ",":
                    pos += 1
            pos += 1
            return ("tuple", items) if tok == "(" else items
        pos += 1
        return tok

    out = node()
    if pos != len(tokens):
        raise ValueError("trailing characters after matrix")
    return out


def _untuple(node):
    if isinstance(node, tuple):
        return [_untuple(x) for x in node[1]]
    return node


def parse_matrix(R: RingSpec, text: str, nrows: int, ncols: int) -> ExactMatrix:
    rows = _nested(_tokens(text))
    if not isinstance(rows, list):
        raise ValueError("a matrix is a bracketed list of rows")
    if len(rows) != nrows or any(not isinstance(r, list) or len(r) != ncols for r in rows):
        raise ValueError(f"expected a {nrows} x {ncols} matrix")
    return ExactMatrix(R, [[parse_element(R, _untuple(x)) for x in r] for r in rows], nrows, ncols)


def format_matrix(R: RingSpec, M: ExactMatrix) -> str:
    return "[" + ", ".join("[" + ", ".join(format_element(R, x) for x in row) + "]"
                           for row in M.rows) + "]"


# ---------------------------------------------------------------------------
# parsing


def _clean(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_session_text(text: str) -> Session:
    lines = text.splitlines()
    body = [(k + 1, _clean(raw)) for k, raw in enumerate(lines)]
    body = [(k, s) for k, s in body if s]
    if not body or body[0][1] != HEADER:
        raise SessionError(body[0][0] if body else 1, f"missing header {HEADER!r}")
    body = body[1:]
    if not body or not body[0][1].startswith("ring "):
        raise SessionError(body[0][0] if body else len(lines), "the ring must be declared first")
    k0, s0 = body[0]
    try:
        R = parse_ring(s0[5:])
    except ValueError as e:
        raise SessionError(k0, str(e))
    S = Session(R, options=dict(DEFAULT_OPTIONS))
    it = iter(body[1:])
    for k, s in it:
        word = s.split()[0]
        try:
            if word == "option":
                _parse_option(S, k, s)
            elif word == "module":
                _declare(S, k, *_parse_module(S, s))
            elif word == "map":
                _declare(S, k, *_parse_map(S, k, s))
            elif word == "class":
                _declare(S, k, *_parse_class(S, k, s))
            elif word == "complex":
                _declare(S, k, *_parse_complex(S, k, s, it))
            elif word == "chainmap":
                _declare(S, k, *_parse_chainmap(S, k, s, it))
            elif word == "tower":
                _declare(S, k, *_parse_tower(S, k, s))
            elif word == "task":
                parts = s.split()
                if len(parts) < 2 or parts[1] not in TASKS:
                    raise SessionError(k, f"unknown task {' '.join(parts[1:2])!r}")
                S.tasks.append(Task(parts[1], parts[2:], k))
            else:
                raise SessionError(k, f"unknown declaration {word!r}")
        except SessionError:
            raise
        except (ValueError, IllDefinedMorphism, IndexError) as e:
            raise SessionError(k, str(e))
    return S


def parse_session(path) -> Session:
    with open(path) as fh:
        return parse_session_text(fh.read())


def _declare(S: Session, line: int, name: str, kind: str, obj):
    if name in S.objects:
        raise SessionError(line, f"duplicate name {name!r}")
    S.objects[name] = obj
    S.kinds[name] = kind


def _parse_option(S, k, s):
    _, key, value = s.split(None, 2)
    if key == "window":
        lo, hi = value.split(":")
        S.options["window"] = (int(lo), int(hi))
    elif key in ("depth", "seed", "cap"):
        S.options[key] = int(value)
    else:
        raise SessionError(k, f"unknown option {key!r}")


def _lhs(s, keyword):
    head, _, rhs = s.partition("=")
    parts = head.split()
    if len(parts) < 2 or parts[0] != keyword:
        raise ValueError(f"malformed {keyword} declaration")
    return parts[1], rhs.strip()


def _parse_module(S, s):
    name, rhs = _lhs(s, "module")
    R = S.ring
    kind, _, rest = rhs.partition(" ")
    if kind == "cyclic":
        M = FPModule.cyclic(R, parse_element(R, _untuple(_nested(_tokens(rest)))))
    elif kind == "free":
        M = FPModule.free(R, int(rest))
    elif kind == "zero":
        M = FPModule.zero(R)
    elif kind == "present":
        g, _, mat = rest.strip().partition(" ")
        g = int(g)
        rows = _nested(_tokens(mat))
        ncols = len(rows[0]) if rows and rows[0] else 0
        rel = parse_matrix(R, mat, g, ncols) if ncols else ExactMatrix.zeros(R, g, 0)
        M = FPModule(R, g, rel)
    else:
        raise ValueError(f"unknown module form {kind!r}")
    return name, "module", M


def _parse_map(S, k, s):
    head, _, mat = s.partition("=")
    m = re.fullmatch(r"map\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)", head.strip())
    if not m:
        raise ValueError("malformed map declaration")
    name, a, b = m.groups()
    A, B = S.get(a, "module", k), S.get(b, "module", k)
    mat = parse_matrix(S.ring, mat, B.num_generators, A.num_generators)
    return name, "map", ModMorphism(A, B, mat)


def _parse_class(S, k, s):
    from .ab4_local import class_of_primes

    name, rhs = _lhs(s, "class")
    R = S.ring
    words = rhs.split(None, 1)
    kind, rest = words[0], (words[1] if len(words) > 1 else "")
    if kind == "all":
        return name, "class", InjectiveClass.everything(R)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if kind == "none":
            return name, "class", InjectiveClass(R, [], "degenerate")
        if kind == "generators":
            mods = [S.get(w, "module", k) for w in rest.split()]
            return name, "class", InjectiveClass(R, mods, name)
        if kind == "primes":
            gens = _element_list(R, rest)
            return name, "class", class_of_primes(R, [make_ideal(R, g) for g in gens])
    raise ValueError(f"unknown class form {kind!r}")


def _element_list(R, text):
    """Whitespace separated elements; tuples may contain spaces."""
    pieces, depth, cur = [], 0, ""
    for ch in text.strip():
        if ch.isspace() and depth == 0:
            if cur:
                pieces.append(cur)
            cur = ""
            continue
        depth += {"(": 1, ")": -1}.get(ch, 0)
        cur += ch
    if cur:
        pieces.append(cur)
    return [parse_element(R, _untuple(_nested(_tokens(p)))) for p in pieces]


def _block(it, first_line):
    out = []
    for k, s in it:
        if s == "end":
            return out
        out.append((k, s))
    raise SessionError(first_line, "block is not closed by 'end'")


def _parse_complex(S, k, s, it):
    parts = s.split()
    name = parts[1]
    objs, diffs, bound = {}, {}, None
    for kk, line in _block(it, k):
        w = line.split()
        if w[0] == "deg":
            objs[int(w[1])] = S.get(w[2], "module", kk)
        elif w[0] == "d":
            diffs[int(w[1])] = S.get(w[2], "map", kk)
        elif w[0] == "bound":
            bound = int(w[1])
        else:
            raise SessionError(kk, f"unknown complex line {w[0]!r}")
    R = S.ring
    if not objs:
        objs = {0: FPModule.zero(R)}
    lo, hi = min(objs), max(objs)
    if bound is not None:
        hi = max(hi, bound)
    for i, f in diffs.items():
        if not (lo < i <= hi):
            raise SessionError(k, f"differential d {i} outside the declared degrees")
    try:
        X = ChainComplex(R, objs, diffs, (lo, hi), bound, True, check=True)
    except ValueError as e:
        raise SessionError(k, str(e))
    return name, "complex", X


def _parse_chainmap(S, k, s, it):
    m = re.fullmatch(r"chainmap\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)", s)
    if not m:
        raise ValueError("malformed chainmap declaration")
    name, a, b = m.groups()
    X, Y = S.get(a, "complex", k), S.get(b, "complex", k)
    comps = {}
    for kk, line in _block(it, k):
        w = line.split()
        if w[0] != "deg":
            raise SessionError(kk, "chain map lines are 'deg i map'")
        comps[int(w[1])] = S.get(w[2], "map", kk)
    try:
        f = ChainMap(X, Y, comps, check=True)
    except ValueError as e:
        raise SessionError(k, str(e))
    return name, "chainmap", f


def _parse_tower(S, k, s):
    from .towers import tow

    name, rhs = _lhs(s, "tower")
    w = rhs.split()
    if len(w) != 3 or w[0] != "tow":
        raise ValueError("towers are declared as 'tow X N'")
    return name, "tower", tow(S.get(w[1], "complex", k), int(w[2]))


# ---------------------------------------------------------------------------
# serialization (for replayable counterexamples)


class SessionWriter:
    """Builds session text for a ring and a handful of objects."""

    def __init__(self, R: RingSpec, options=None):
        self.R = R
        self.lines = [HEADER, f"ring {R}"]
        for key, value in (options or {}).items():
            if key == "window":
                value = f"{value[0]}:{value[1]}"
            self.lines.append(f"option {key} {value}")
        self.count = 0

    def _name(self, prefix):
        self.count += 1
        return f"{prefix}{self.count}"

    def module(self, M: FPModule) -> str:
        name = self._name("M")
        rel = M.relations
        mat = format_matrix(self.R, rel) if rel.ncols else "[]"
        self.lines.append(f"module {name} = present {M.num_generators} {mat}")
        return name

    def map(self, f: ModMorphism, src: str, tgt: str) -> str:
        name = self._name("f")
        self.lines.append(f"map {name} : {src} -> {tgt} = {format_matrix(self.R, f.matrix)}")
        return name

    def complex(self, X: ChainComplex) -> str:
        mods = {i: self.module(X.obj(i)) for i in X.degrees()}
        maps = {i: self.map(X.d(i), mods[i], mods[i - 1]) for i in range(X.lo + 1, X.hi + 1)}
        name = self._name("X")
        self.lines.append(f"complex {name}")
        for i in X.degrees():
            self.lines.append(f"  deg {i} {mods[i]}")
        for i, m in maps.items():
            self.lines.append(f"  d {i} {m}")
        if X.bounded_above_at is not None:
            self.lines.append(f"  bound {X.bounded_above_at}")
        self.lines.append("end")
        self._mods = getattr(self, "_mods", {})
        self._mods[name] = mods
        return name

    def chain_map(self, f: ChainMap, src: str, tgt: str) -> str:
        ms, mt = self._mods[src], self._mods[tgt]
        comps = {}
        for i in f.degrees():
            if i in ms and i in mt:
                comps[i] = self.map(f[i], ms[i], mt[i])
        name = self._name("g")
        self.lines.append(f"chainmap {name} : {src} -> {tgt}")
        for i, m in comps.items():
            self.lines.append(f"  deg {i} {m}")
        self.lines.append("end")
        return name

    def cls(self, cls: InjectiveClass) -> str:
        name = self._name("I")
        if cls.all_objects:
            self.lines.append(f"class {name} = all")
        elif not cls.generators:
            self.lines.append(f"class {name} = none")
        else:
            gens = [self.module(W) for W in cls.generators]
            self.lines.append(f"class {name} = generators " + " ".join(gens))
        return name

    def task(self, *words):
        self.lines.append("task " + " ".join(str(w) for w in words))

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"
