"""Line-oriented construction scripts.

One command per line, ``#`` starts a comment.  The first word is the command,
the second usually the new binding.  Scalars are single tokens (no spaces):
``3/5``, ``9.7``, ``sqrt(2)/2``, ``pi/4``.

    frame F 2
    point A 0 0
    point B 3 4
    dist d1 A B

Types are inferred statement by statement, so unbound names, rebinding and
type mismatches are reported at parse time with a line and column.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..exprs import ExprError, parse_scalar

__all__ = ["ScriptError", "Token", "Statement", "Script", "parse", "print_script", "COMMANDS"]


class ScriptError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col

    def format(self, source: str = "<script>") -> str:
        return f"{source}:{self.line}:{self.col}: error: {self.message}"

    def __str__(self) -> str:
        return f"line {self.line}, column {self.col}: {self.message}"


@dataclass(frozen=True)
class Token:
    text: str
    col: int = field(default=1, compare=False)


@dataclass(frozen=True)
class Statement:
    command: str
    args: tuple[Token, ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=1, compare=False)
    # name -> type of each binding introduced, filled by the parser
    binds: tuple[tuple[str, str], ...] = field(default=(), compare=False)
    frame: str | None = field(default=None, compare=False)

    def text(self) -> str:
        return " ".join([self.command] + [t.text for t in self.args])


@dataclass(frozen=True)
class Script:
    statements: tuple[Statement, ...]

    def __len__(self) -> int:
        return len(self.statements)


# Argument kinds:
#   new:T      fresh name bound to type T
#   ref:T|U    existing name of one of the listed types
#   expr       scalar literal
#   radius     distance/scalar name or scalar literal
#   int        integer literal
#   orient?    optional ccw/cw
#   refs:T     one or more names of type T
#   opt:K      optional trailing token of kind K
COMMANDS: dict[str, tuple[str, ...]] = {
    "frame": ("newframe", "dim"),
    "point": ("new:point", "coords"),
    "let": ("new:scalar", "expr"),
    "dist": ("new:distance", "ref:point", "ref:point"),
    "sphere": ("new:sphere", "ref:point", "radius"),
    "line": ("new:line", "ref:point", "ref:point"),
    "segment": ("new:segment", "ref:point", "ref:point"),
    "parallel": ("new:line", "ref:point", "ref:line"),
    "foot": ("new:point", "ref:point", "ref:line"),
    "cross": ("new:point", "ref:line", "ref:line"),
    "vec": ("new:vector", "ref:point", "ref:point"),
    "vadd": ("new:vector", "ref:vector", "ref:vector"),
    "scale": ("new:vector", "expr", "ref:vector"),
    "norm": ("new:distance", "ref:vector"),
    "at": ("new:point", "ref:point", "ref:vector"),
    "construct": ("new:point", "expr", "ref:vector", "ref:point"),
    "vsum": ("new:point", "ref:vector", "ref:vector", "ref:point"),
    "angle": ("new:angle", "ref:vector", "ref:vector", "orient?"),
    "aadd": ("new:angle", "ref:angle", "ref:angle"),
    "ascale": ("new:angle", "expr", "ref:angle"),
    "sin": ("new:scalar", "ref:angle"),
    "cos": ("new:scalar", "ref:angle"),
    "arc": ("new:arc", "ref:point", "radius", "ref:vector", "ref:vector", "orient?"),
    "partition": ("new:distance", "ref:arc", "int"),
    "arclength": ("new:distance", "ref:arc", "expr"),
    "tape": ("new:angle", "ref:arc", "expr"),
    "ball": ("new:openset", "ref:point", "radius"),
    "union": ("new:openset", "refs:openset"),
    "inter": ("new:openset", "refs:openset"),
    "member": ("new:truth", "ref:openset", "ref:point"),
    "witness": ("new:witness", "ref:openset", "ref:point", "opt:expr"),
    "hausdorff": ("new:openset", "new:openset", "ref:point", "ref:point", "opt:int"),
    "verify": ("suite", "flags"),
    "render": ("scene", "refs:any"),
}

_RADIUS_TYPES = ("distance", "scalar")
_DRAWABLE = ("point", "distance", "sphere", "line", "segment", "vector", "arc", "openset", "witness")
_SUITE_FLAGS = {"--trials": int, "--seed": int, "--dim": int, "--samples": int}


def _tokens(line: str) -> list[Token]:
    out, i = [], 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        if line[i] == "#":
            break
        j = i
        while j < len(line) and not line[j].isspace() and line[j] != "#":
            j += 1
        out.append(Token(line[i:j], i + 1))
        i = j
    return out


def _is_name(text: str) -> bool:
    return text.replace("_", "a").replace("'", "").isalnum() and not text[0].isdigit()


class _Parser:
    def __init__(self):
        self.types: dict[str, str] = {}
        self.frames: dict[str, int] = {}
        self.frame: str | None = None
        self.scenes: set[str] = set()

    def fail(self, msg: str, line: int, col: int):
        raise ScriptError(msg, line, col)

    def bind(self, tok: Token, typ: str, line: int) -> tuple[str, str]:
        if not _is_name(tok.text):
            self.fail(f"invalid name {tok.text!r}", line, tok.col)
        if tok.text in self.types:
            self.fail(f"name {tok.text!r} is already bound (single assignment)", line, tok.col)
        self.types[tok.text] = typ
        return tok.text, typ

    def ref(self, tok: Token, allowed: tuple[str, ...], line: int) -> str:
        typ = self.types.get(tok.text)
        if typ is None:
            self.fail(f"unbound name {tok.text!r}", line, tok.col)
        if "any" not in allowed and typ not in allowed:
            self.fail(f"type mismatch: {tok.text!r} is a {typ}, expected {' or '.join(allowed)}", line, tok.col)
        if "any" in allowed and typ not in _DRAWABLE:
            self.fail(f"{tok.text!r} is a {typ} and cannot be drawn", line, tok.col)
        return typ

    def expr(self, tok: Token, line: int) -> None:
        try:
            parse_scalar(tok.text)
        except ExprError as exc:
            self.fail(str(exc), line, tok.col + exc.col)

    def statement(self, cmd: Token, args: list[Token], line: int) -> Statement:
        sig = COMMANDS.get(cmd.text)
        if sig is None:
            self.fail(f"unknown command {cmd.text!r}", line, cmd.col)
        if cmd.text != "frame" and self.frame is None:
            self.fail("declare a frame first", line, cmd.col)
        binds: list[tuple[str, str]] = []
        pending: list[tuple[Token, str]] = []
        i = 0
        end_col = (args[-1].col + len(args[-1].text)) if args else cmd.col + len(cmd.text)

        def need(what: str) -> Token:
            nonlocal i
            if i >= len(args):
                self.fail(f"{cmd.text}: missing {what}", line, end_col)
            tok = args[i]
            i += 1
            return tok

        for kind in sig:
            if kind == "newframe":
                tok = need("frame name")
                pending.append((tok, "frame"))
            elif kind == "dim":
                tok = need("dimension")
                if tok.text not in ("2", "3"):
                    self.fail("frame dimension must be 2 or 3", line, tok.col)
            elif kind.startswith("new:"):
                pending.append((need("name"), kind[4:]))
            elif kind == "coords":
                dim = self.frames[self.frame]
                rest = args[i:]
                if len(rest) != dim:
                    col = rest[dim].col if len(rest) > dim else end_col
                    self.fail(f"point in a {dim}D frame needs {dim} coordinates, got {len(rest)}", line, col)
                for tok in rest:
                    self.expr(tok, line)
                i = len(args)
            elif kind.startswith("ref:"):
                self.ref(need(kind[4:]), tuple(kind[4:].split("|")), line)
            elif kind.startswith("refs:"):
                if i >= len(args):
                    self.fail(f"{cmd.text}: needs at least one name", line, end_col)
                for tok in args[i:]:
                    self.ref(tok, (kind[5:],), line)
                i = len(args)
            elif kind == "expr":
                self.expr(need("scalar"), line)
            elif kind == "radius":
                tok = need("radius")
                if tok.text in self.types:
                    self.ref(tok, _RADIUS_TYPES, line)
                else:
                    self.expr(tok, line)
            elif kind == "int":
                tok = need("integer")
                if not tok.text.isdigit():
                    self.fail(f"expected an integer, got {tok.text!r}", line, tok.col)
            elif kind == "orient?":
                if i < len(args) and args[i].text in ("ccw", "cw"):
                    i += 1
            elif kind.startswith("opt:"):
                if i < len(args):
                    tok = args[i]
                    i += 1
                    if kind == "opt:int" and not tok.text.isdigit():
                        self.fail(f"expected an integer, got {tok.text!r}", line, tok.col)
                    if kind == "opt:expr":
                        self.expr(tok, line)
            elif kind == "suite":
                need("suite name")
            elif kind == "flags":
                while i < len(args):
                    flag = args[i]
                    if flag.text not in _SUITE_FLAGS:
                        self.fail(f"unknown verify option {flag.text!r}", line, flag.col)
                    i += 1
                    val = need(f"value for {flag.text}")
                    if not val.text.isdigit():
                        self.fail(f"{flag.text} takes an integer", line, val.col)
            elif kind == "scene":
                tok = need("scene name")
                if not _is_name(tok.text):
                    self.fail(f"invalid scene name {tok.text!r}", line, tok.col)
                if tok.text in self.scenes:
                    self.fail(f"scene {tok.text!r} is rendered twice", line, tok.col)
                self.scenes.add(tok.text)
        if i < len(args):
            self.fail(f"{cmd.text}: unexpected argument {args[i].text!r}", line, args[i].col)
        for tok, typ in pending:
            binds.append(self.bind(tok, typ, line))
        if cmd.text == "frame":
            self.frames[args[0].text] = int(args[1].text)
            self.frame = args[0].text
        return Statement(cmd.text, tuple(args), line, cmd.col, tuple(binds), self.frame)


def parse(text: str) -> Script:
    p = _Parser()
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        out.append(p.statement(toks[0], toks[1:], n))
    return Script(tuple(out))


def print_script(script: Script) -> str:
    return "".join(st.text() + "\n" for st in script.statements)
