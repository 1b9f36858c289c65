"""Declarative pre-handle / post-handle rules and hotwords.

Rule file, one rule per line (``#`` starts a comment)::

    PRIORITY <tab> PRE|POST <tab> PATTERN <tab> ACTION

``PATTERN`` is a whitespace-separated list of conditions, all of which must
hold for a span:

* ``cat:NAME`` - the span's current category (``*`` matches any);
* ``text:REGEX`` - full match against the span's source text;
* ``prev:REGEX`` / ``next:REGEX`` - full match against the neighbouring
  token (a missing neighbour never matches).

Regexes cannot contain literal spaces; use ``\\s``. Add ``(?i)`` for
case-insensitive matching.

A PRE action is a category name. A POST action is a template of literal
words and placeholders ``{N}`` or ``{N:category}``, where ``N`` is a capture
group of the ``text`` condition (0 = the whole span) and ``category`` names
the verbalizer applied to it (``{1:digit}``).

Higher priorities are tried first; equal priorities keep file order.

Hotword file, one entry per line: ``SURFACE <tab> CATEGORY <tab> WORDS``.
A hotword matches the exact source text of one or more adjacent tokens and
overrides both the model and every rule.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from ..core import SpanTag, Token, data_path
from .verbalize import VERBALIZERS, is_spoken, try_verbalize


class RuleFileError(ValueError):
    def __init__(self, path, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.lineno = lineno


_PLACEHOLDER = re.compile(r"\{(\d+)(?::([A-Za-z]+))?\}")


@dataclass(frozen=True)
class TnRule:
    kind: str  # "pre" or "post"
    priority: int
    order: int
    conditions: tuple[tuple[str, object], ...]
    action: str
    source: str = ""

    def text_match(self, text: str) -> re.Match | None:
        """Match object of the text condition (a trivial one when absent)."""
        for key, value in self.conditions:
            if key == "text":
                return value.fullmatch(text)
        return re.fullmatch(r"(?s).*", text)

    def matches(self, span: SpanTag, tokens: Sequence[Token], text: str) -> re.Match | None:
        m = self.text_match(text)
        if m is None:
            return None
        for key, value in self.conditions:
            if key == "cat" and value != "*" and value != span.category:
                return None
            if key == "prev" and (span.start == 0 or not value.fullmatch(tokens[span.start - 1].text)):
                return None
            if key == "next" and (span.end >= len(tokens) or not value.fullmatch(tokens[span.end].text)):
                return None
        return m

    def render(self, m: re.Match, use_and: bool = True) -> str:
        def sub(pm: re.Match) -> str:
            group = m.group(int(pm.group(1))) or ""
            if pm.group(2) is None:
                return group.lower()
            return try_verbalize(group, pm.group(2).upper(), use_and)[0]

        return " ".join(_PLACEHOLDER.sub(sub, self.action).split())


@dataclass(frozen=True)
class HotwordEntry:
    surface: str
    category: str
    verbalization: str


@dataclass
class RuleSet:
    pre: list[TnRule] = field(default_factory=list)
    post: list[TnRule] = field(default_factory=list)
    hotwords: dict[str, HotwordEntry] = field(default_factory=dict)

    @classmethod
    def load(
        cls,
        rules_path: str | Path | None = None,
        hotwords_path: str | Path | None = None,
        categories: Sequence[str] | None = None,
    ) -> "RuleSet":
        cats = set(categories or VERBALIZERS)
        rs = cls()
        if rules_path is not None:
            for rule in parse_rules(rules_path, cats):
                (rs.pre if rule.kind == "pre" else rs.post).append(rule)
        if hotwords_path is not None:
            for entry in parse_hotwords(hotwords_path, cats):
                rs.hotwords[entry.surface] = entry
        rs.pre.sort(key=lambda r: (-r.priority, r.order))
        rs.post.sort(key=lambda r: (-r.priority, r.order))
        return rs

    @classmethod
    def default(cls) -> "RuleSet":
        return cls.load(data_path("tn_rules.tsv"), data_path("hotwords.tsv"))


def _compile(path, lineno: int, regex: str) -> re.Pattern:
    try:
        return re.compile(regex)
    except re.error as exc:
        raise RuleFileError(path, lineno, f"bad regex {regex!r}: {exc}") from None


def _data_lines(path):
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if line.strip() and not line.lstrip().startswith("#"):
            yield lineno, line.rstrip("\n")


def parse_rules(path: str | Path, categories: set[str]) -> list[TnRule]:
    rules = []
    for lineno, line in _data_lines(path):
        fields = line.split("\t")
        if len(fields) != 4:
            raise RuleFileError(path, lineno, f"expected 4 tab-separated fields, got {len(fields)}")
        prio, kind, pattern, action = (f.strip() for f in fields)
        try:
            priority = int(prio)
        except ValueError:
            raise RuleFileError(path, lineno, f"priority {prio!r} is not an integer") from None
        kind = kind.lower()
        if kind not in ("pre", "post"):
            raise RuleFileError(path, lineno, f"rule kind must be PRE or POST, got {kind!r}")
        conds = []
        text_re = None
        for cond in pattern.split():
            key, sep, value = cond.partition(":")
            if not sep or key not in ("cat", "text", "prev", "next"):
                raise RuleFileError(path, lineno, f"bad condition {cond!r}")
            if key == "cat":
                if value != "*" and value not in categories:
                    raise RuleFileError(path, lineno, f"unknown category {value!r}")
                conds.append((key, value))
            else:
                rx = _compile(path, lineno, value)
                if key == "text":
                    text_re = rx
                conds.append((key, rx))
        if kind == "pre":
            if action not in categories:
                raise RuleFileError(path, lineno, f"unknown category {action!r}")
        else:
            groups = text_re.groups if text_re is not None else 0
            for pm in _PLACEHOLDER.finditer(action):
                if int(pm.group(1)) > groups:
                    raise RuleFileError(path, lineno, f"template refers to missing group {pm.group(1)}")
                if pm.group(2) and pm.group(2).upper() not in VERBALIZERS:
                    raise RuleFileError(path, lineno, f"unknown verbalizer {pm.group(2)!r}")
            if not is_spoken(" ".join(_PLACEHOLDER.sub("x", action).split())):
                raise RuleFileError(path, lineno, f"template {action!r} must be lowercase words")
        rules.append(TnRule(kind, priority, len(rules), tuple(conds), action, f"{Path(path).name}:{lineno}"))
    return rules


def parse_hotwords(path: str | Path, categories: set[str]) -> list[HotwordEntry]:
    entries = []
    for lineno, line in _data_lines(path):
        fields = line.split("\t")
        if len(fields) != 3:
            raise RuleFileError(path, lineno, f"expected 3 tab-separated fields, got {len(fields)}")
        surface, cat, words = (f.strip() for f in fields)
        if cat not in categories:
            raise RuleFileError(path, lineno, f"unknown category {cat!r}")
        if not is_spoken(words):
            raise RuleFileError(path, lineno, f"verbalization {words!r} must be lowercase words")
        entries.append(HotwordEntry(surface, cat, words))
    return entries


def span_text(text: str, tokens: Sequence[Token], span: SpanTag) -> str:
    return text[tokens[span.start].start : tokens[span.end - 1].end]


def find_hotwords(text: str, tokens: Sequence[Token], rules: RuleSet) -> list[tuple[SpanTag, HotwordEntry]]:
    """Leftmost-longest hotword matches over token runs."""
    found = []
    i = 0
    longest = max((len(s) for s in rules.hotwords), default=0)
    while i < len(tokens) and rules.hotwords:
        hit = None
        for j in range(len(tokens), i, -1):
            start, end = tokens[i].start, tokens[j - 1].end
            if end - start > longest:
                continue
            entry = rules.hotwords.get(text[start:end])
            if entry is not None:
                hit = (SpanTag(entry.category, i, j), entry)
                break
        if hit:
            found.append(hit)
            i = hit[0].end
        else:
            i += 1
    return found


def pre_handle(text: str, tokens: Sequence[Token], spans: Sequence[SpanTag], rules: RuleSet) -> list[SpanTag]:
    """Correct model categories: hotwords first, then the first matching PRE rule per span."""
    hot = find_hotwords(text, tokens, rules)
    hot_spans = [s for s, _ in hot]
    out = list(hot_spans)
    for span in spans:
        if any(span.start < h.end and h.start < span.end for h in hot_spans):
            continue
        st = span_text(text, tokens, span)
        for rule in rules.pre:
            if rule.matches(span, tokens, st):
                span = SpanTag(rule.action, span.start, span.end)
                break
        out.append(span)
    return sorted(out, key=lambda s: s.start)


def post_handle(
    text: str, tokens: Sequence[Token], span: SpanTag, rules: RuleSet, use_and: bool = True
) -> tuple[str, str, str | None]:
    """Verbalize one span: hotword, else first matching POST rule, else the category verbalizer.

    Returns ``(words, origin, diagnostic)`` where ``origin`` names what produced the words.
    """
    st = span_text(text, tokens, span)
    entry = rules.hotwords.get(st)
    if entry is not None:
        return entry.verbalization, "hotword", None
    for rule in rules.post:
        m = rule.matches(span, tokens, st)
        if m is not None:
            return rule.render(m, use_and), rule.source, None
    words, diag = try_verbalize(st, span.category, use_and)
    return words, ("fallback" if diag else "verbalizer"), diag
