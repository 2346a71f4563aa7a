"""Text and JSON formats for Gauss paragraphs, Gauss codes and Wirtinger
presentations.

Paragraphs: words separated by ``/`` or newlines, letters by whitespace, a
letter is ``INT``, ``INT+`` or ``INT-``; ``()`` writes an empty word.  Codes:
whitespace-separated ``INT+`` / ``INT-`` symbols.  Presentations::

    gens a b;
    rel a = b^-1 a b;

``#`` starts a comment.  Crossing labels may be any positive integers; they
are compressed to ``1..n`` keeping their order.  Text starting with ``{`` is
read as the JSON mirror of the same format.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import NamedTuple, Union

from .diagram import GaussParagraph, Letter
from .gausscode import GaussCode, Symbol
from .wirtinger import Relator, WirtingerPresentation, inverse


@dataclass(frozen=True)
class SourceText:
    content: str
    origin: str = "<inline>"


TextLike = Union[str, SourceText]


class CodecError(ValueError):
    """Base class for input errors.  ``errors`` holds every problem found,
    starting with this one: problems with single tokens first, in input
    order, then problems spanning several tokens."""

    def __init__(self, message, token=None, line=None, column=None, origin=None):
        super().__init__(message)
        self.message = message
        self.token = token
        self.line = line
        self.column = column
        self.origin = origin
        self.errors = [self]

    @property
    def kind(self) -> str:
        return type(self).__name__

    def __str__(self):
        where = self.origin or ""
        if self.line is not None:
            where += f":{self.line}:{self.column}"
        head = f"{where}: " if where else ""
        tok = f" (at {self.token!r})" if self.token is not None else ""
        return f"{head}{self.kind}: {self.message}{tok}"


class MalformedLetter(CodecError): pass
class DuplicateLetter(CodecError): pass
class MissingPartner(CodecError): pass
class BothSigns(CodecError): pass
class OddWordLength(CodecError): pass
class MalformedSymbol(CodecError): pass
class MissingSuperscript(CodecError): pass
class NotAPermutation(CodecError): pass
class UnknownGenerator(CodecError): pass
class MalformedRelator(CodecError): pass
class MalformedPresentation(CodecError): pass
class DuplicateGenerator(CodecError): pass
class MalformedJSON(CodecError): pass


def _raise(errors):
    if errors:
        first = errors[0]
        first.errors = list(errors)
        raise first


def _source(text: TextLike) -> SourceText:
    return text if isinstance(text, SourceText) else SourceText(text)


class Token(NamedTuple):
    text: str
    line: int | None = None
    column: int | None = None


_TOKEN = re.compile(r"/|[^\s/]+")
_LETTER = re.compile(r"([0-9]+)([+-]?)")
EMPTY_WORD = "()"


def _is_json(content: str) -> bool:
    return content.lstrip().startswith("{")


def _load_json(src: SourceText, fmt: str) -> dict:
    try:
        data = json.loads(src.content)
    except json.JSONDecodeError as exc:
        raise MalformedJSON(exc.msg, line=exc.lineno, column=exc.colno, origin=src.origin)
    if not isinstance(data, dict) or data.get("format") != fmt:
        raise MalformedJSON(f"expected a JSON object with \"format\": \"{fmt}\"",
                            origin=src.origin)
    return data


def _line_words(src: SourceText) -> list[list[Token]]:
    """Words of the paragraph grammar with token positions."""
    words = []
    for lineno, line in enumerate(src.content.splitlines(), 1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        current = []
        words.append(current)
        for m in _TOKEN.finditer(body):
            if m.group() == "/":
                current = []
                words.append(current)
            else:
                current.append(Token(m.group(), lineno, m.start() + 1))
    return words


def _compress(labels) -> dict[int, int]:
    return {old: new for new, old in enumerate(sorted(set(labels)), 1)}


# -- Gauss paragraphs -------------------------------------------------------------

def _paragraph_from_tokens(words: list[list[Token]], origin):
    errors, parsed = [], []
    over, under = {}, {}

    def err(cls, msg, tok):
        errors.append(cls(msg, tok.text, tok.line, tok.column, origin))

    for word in words:
        if len(word) == 1 and word[0].text == EMPTY_WORD:
            parsed.append(([], word[0]))
            continue
        letters = []
        for tok in word:
            m = _LETTER.fullmatch(tok.text)
            if not m or int(m.group(1)) == 0:
                err(MalformedLetter, "a letter is a positive integer with optional + or -", tok)
                continue
            label, suffix = int(m.group(1)), m.group(2)
            if not suffix:
                if label in over:
                    err(DuplicateLetter, f"over-letter {label} occurs twice", tok)
                    continue
                over[label] = tok
                letters.append(Letter(label))
            else:
                sign = 1 if suffix == "+" else -1
                if label in under:
                    if under[label][1] == sign:
                        err(DuplicateLetter, f"under-letter {tok.text} occurs twice", tok)
                    else:
                        err(BothSigns, f"crossing {label} has both {label}+ and {label}-", tok)
                    continue
                under[label] = (tok, sign)
                letters.append(Letter(label, sign))
        parsed.append((letters, word[0] if word else None))

    for label in sorted(set(over) | set(under)):
        if label not in under:
            err(MissingPartner, f"crossing {label} has no under-letter {label}+ or {label}-",
                over[label])
        elif label not in over:
            err(MissingPartner, f"crossing {label} has no over-letter {label}", under[label][0])
    for word, (letters, first) in zip(words, parsed):
        if len(word) % 2 and not (len(word) == 1 and word[0].text == EMPTY_WORD):
            err(OddWordLength, f"word of odd length {len(word)}", first)
    _raise(errors)

    renaming = _compress(over)
    p = GaussParagraph(tuple(
        tuple(Letter(renaming[l.index], l.sign) for l in letters) for letters, _ in parsed
    ))
    return p, renaming


def read_paragraph(text: TextLike) -> tuple[GaussParagraph, dict[int, int]]:
    """Parse a paragraph; also return the crossing renaming ``old -> new``."""
    src = _source(text)
    if _is_json(src.content):
        data = _load_json(src, "gauss-paragraph")
        words = data.get("words")
        if not isinstance(words, list) or not all(isinstance(w, list) for w in words):
            raise MalformedJSON("\"words\" must be a list of lists", origin=src.origin)
        toks = [[Token(str(t)) for t in w] for w in words]
        toks = [w or [Token(EMPTY_WORD)] for w in toks]
        return _paragraph_from_tokens(toks, src.origin)
    words = _line_words(src)
    fixed = []
    for w in words:
        fixed.append(w if w else [Token(EMPTY_WORD)])
    return _paragraph_from_tokens(fixed, src.origin)


def parse_paragraph(text: TextLike) -> GaussParagraph:
    return read_paragraph(text)[0]


# -- Gauss codes ---------------------------------------------------------------------

def _code_from_tokens(tokens: list[Token], origin):
    errors, symbols, first = [], [], {}

    def err(cls, msg, tok):
        errors.append(cls(msg, tok.text, tok.line, tok.column, origin))

    for tok in tokens:
        m = _LETTER.fullmatch(tok.text)
        if not m or int(m.group(1)) == 0:
            err(MalformedSymbol, "a symbol is a positive integer followed by + or -", tok)
            continue
        if not m.group(2):
            err(MissingSuperscript, f"symbol {tok.text} needs + or -", tok)
            continue
        s = Symbol(int(m.group(1)), 1 if m.group(2) == "+" else -1)
        symbols.append(s)
        first.setdefault(s.index, tok)
    if not errors:
        counts = {}
        for s in symbols:
            counts.setdefault(s.index, []).append(s.exp)
        for label in sorted(counts):
            if sorted(counts[label]) != [-1, 1]:
                err(NotAPermutation,
                    f"index {label} must appear exactly once as {label}+ and once as {label}-",
                    first[label])
    _raise(errors)
    renaming = _compress(s.index for s in symbols)
    return GaussCode(tuple(Symbol(renaming[s.index], s.exp) for s in symbols)), renaming


def read_code(text: TextLike) -> tuple[GaussCode, dict[int, int]]:
    src = _source(text)
    if _is_json(src.content):
        data = _load_json(src, "gauss-code")
        if not isinstance(data.get("symbols"), list):
            raise MalformedJSON("\"symbols\" must be a list", origin=src.origin)
        return _code_from_tokens([Token(str(t)) for t in data["symbols"]], src.origin)
    tokens = []
    for lineno, line in enumerate(src.content.splitlines(), 1):
        body = line.split("#", 1)[0]
        tokens += [Token(m.group(), lineno, m.start() + 1) for m in re.finditer(r"\S+", body)]
    return _code_from_tokens(tokens, src.origin)


def parse_code(text: TextLike) -> GaussCode:
    return read_code(text)[0]


# -- Wirtinger presentations -------------------------------------------------------

_PRES_TOKEN = re.compile(r"(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<inv>\^-1)|(?P<op>[=;])|(?P<bad>\S)")
_KEYWORDS = {"gens", "rel"}


def _pres_tokens(src: SourceText) -> list[Token]:
    out = []
    for lineno, line in enumerate(src.content.splitlines(), 1):
        body = line.split("#", 1)[0]
        out += [Token(m.group(), lineno, m.start() + 1) for m in _PRES_TOKEN.finditer(body)]
    return out


def _split_conjugation(letters):
    """Write ``letters`` as ``w^-1 x w``; None if impossible."""
    if len(letters) % 2 == 0:
        return None
    t = len(letters) // 2
    middle = letters[t]
    w = tuple(letters[t + 1:])
    if middle[1] != 1 or tuple(letters[:t]) != inverse(w):
        return None
    return middle[0], w


def _presentation_from_statements(gens, rels, origin):
    """``gens``: list of name tokens; ``rels``: list of (stmt token, target
    token, [(name token, exp)]) or an error instance."""
    errors = []

    def err(cls, msg, tok):
        errors.append(cls(msg, tok.text, tok.line, tok.column, origin))

    index = {}
    for tok in gens:
        if tok.text in _KEYWORDS or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok.text):
            err(MalformedPresentation, f"{tok.text!r} cannot name a generator", tok)
        elif tok.text in index:
            err(DuplicateGenerator, f"generator {tok.text} declared twice", tok)
        else:
            index[tok.text] = len(index)
    relators = []
    for item in rels:
        if isinstance(item, CodecError):
            errors.append(item)
            continue
        stmt, target, letters = item
        unknown = [t for t in [target] + [t for t, _ in letters] if t.text not in index]
        if unknown:
            err(UnknownGenerator, f"generator {unknown[0].text} is not declared", unknown[0])
            continue
        split = _split_conjugation([(index[t.text], e) for t, e in letters])
        if split is None:
            err(MalformedRelator,
                "right-hand side must read w^-1 x w for a generator x and word w", stmt)
            continue
        source, w = split
        relators.append(Relator(index[target.text], source, w))
    _raise(errors)
    return WirtingerPresentation(tuple(index), tuple(relators))


def _statements(tokens: list[Token]):
    """Split at ``;``; the last statement may omit it."""
    stmts, current = [], []
    for tok in tokens:
        current.append(tok)
        if tok.text == ";":
            stmts.append(current)
            current = []
    if current:
        last = current[-1]
        stmts.append(current + [Token(";", last.line, last.column + len(last.text))])
    return stmts


def read_presentation(text: TextLike) -> WirtingerPresentation:
    src = _source(text)
    if _is_json(src.content):
        return _presentation_from_json(src)
    tokens = _pres_tokens(src)
    stmts = _statements(tokens)
    if not stmts or stmts[0][0].text != "gens":
        tok = (stmts[0][0] if stmts else tokens[0]) if tokens else Token("")
        raise MalformedPresentation("a presentation starts with 'gens NAME ... ;'",
                                    tok.text, tok.line, tok.column, src.origin)
    head = stmts[0][1:-1]
    if not head:
        tok = stmts[0][0]
        raise MalformedPresentation("'gens' needs at least one generator",
                                    tok.text, tok.line, tok.column, src.origin)
    rels = []
    for stmt in stmts[1:]:
        first = stmt[0]
        if first.text != "rel" or len(stmt) < 4 or stmt[2].text != "=" \
                or not re.fullmatch(r"[A-Za-z_]\w*", stmt[1].text):
            rels.append(MalformedRelator("expected 'rel NAME = WORD;'", first.text,
                                         first.line, first.column, src.origin))
            continue
        letters, bad = [], None
        for tok in stmt[3:-1]:
            if tok.text == "^-1" and letters and letters[-1][1] == 1:
                letters[-1] = (letters[-1][0], -1)
            elif re.fullmatch(r"[A-Za-z_]\w*", tok.text) and tok.text not in _KEYWORDS:
                letters.append((tok, 1))
            else:
                bad = tok
                break
        if bad is not None:
            rels.append(MalformedRelator(f"unexpected {bad.text!r} in relator word", bad.text,
                                         bad.line, bad.column, src.origin))
            continue
        rels.append((first, stmt[1], letters))
    return _presentation_from_statements(head, rels, src.origin)


def _presentation_from_json(src):
    data = _load_json(src, "wirtinger")
    gens = data.get("generators")
    if not isinstance(gens, list) or not gens:
        raise MalformedJSON("\"generators\" must be a non-empty list", origin=src.origin)
    rels = []
    for k, r in enumerate(data.get("relators", [])):
        stmt = Token(f"relators[{k}]")
        try:
            letters = [(Token(str(name)), int(exp)) for name, exp in r["conjugator"]]
            if any(e not in (1, -1) for _, e in letters):
                raise ValueError
            w = [(t, -e) for t, e in reversed(letters)] + [(Token(str(r["source"])), 1)] + letters
            rels.append((stmt, Token(str(r["target"])), w))
        except (KeyError, TypeError, ValueError):
            rels.append(MalformedRelator("relator needs target, source and "
                                         "conjugator [[name, +-1], ...]", stmt.text,
                                         origin=src.origin))
    return _presentation_from_statements([Token(str(g)) for g in gens], rels, src.origin)


def parse_presentation(text: TextLike) -> WirtingerPresentation:
    return read_presentation(text)


# -- output --------------------------------------------------------------------------

def serialize(x) -> str:
    if isinstance(x, GaussParagraph):
        return " / ".join(" ".join(map(str, w)) if w else EMPTY_WORD for w in x.words)
    if isinstance(x, GaussCode):
        return str(x)
    if isinstance(x, WirtingerPresentation):
        lines = [f"gens {' '.join(x.generators)};"]
        lines += [f"rel {x.relator_str(r)};" for r in x.relators]
        return "\n".join(lines)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def to_json(x) -> dict:
    if isinstance(x, GaussParagraph):
        return {"format": "gauss-paragraph", "words": [[str(l) for l in w] for w in x.words]}
    if isinstance(x, GaussCode):
        return {"format": "gauss-code", "symbols": [str(s) for s in x.symbols]}
    if isinstance(x, WirtingerPresentation):
        names = x.generators
        return {"format": "wirtinger", "generators": list(names), "relators": [
            {"target": names[r.target], "source": names[r.source],
             "conjugator": [[names[g], e] for g, e in r.conjugator]} for r in x.relators
        ]}
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(x) -> str:
    return json.dumps(to_json(x))


def detect_format(text: TextLike) -> str:
    """Guess ``paragraph``, ``code`` or ``presentation``.

    Codes are told apart from paragraphs by every letter carrying a sign:
    a non-empty paragraph always has unsigned over-letters.
    """
    content = _source(text).content
    if _is_json(content):
        try:
            fmt = json.loads(content).get("format")
        except (json.JSONDecodeError, AttributeError):
            fmt = None
        return {"gauss-code": "code", "wirtinger": "presentation"}.get(fmt, "paragraph")
    body = "\n".join(line.split("#", 1)[0] for line in content.splitlines())
    tokens = body.split()
    if tokens and tokens[0] == "gens":
        return "presentation"
    if tokens and "/" not in body and all(t[-1:] in ("+", "-") for t in tokens):
        return "code"
    return "paragraph"


def parse(text: TextLike, kind: str | None = None):
    kind = kind or detect_format(text)
    readers = {"paragraph": parse_paragraph, "code": parse_code,
               "presentation": parse_presentation}
    return readers[kind](text)
