"""Hybrid model + rules text normalization."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..core import SpanTag, Token, decode_labels, tokenize
from ..models.multitask import ModelNotLoaded, MultiTaskTagger
from .rules import RuleSet, post_handle, pre_handle, span_text


@dataclass(frozen=True)
class Replacement:
    """Provenance of one verbalized span."""

    span: SpanTag
    source: str
    words: tuple[str, ...]
    out_start: int
    out_end: int
    origin: str
    diagnostic: str | None = None


@dataclass
class NormalizedSentence:
    text: str
    tokens: list[Token]
    words: list[str]
    replacements: list[Replacement] = field(default_factory=list)

    @property
    def normalized(self) -> str:
        return " ".join(self.words)

    def diagnostics(self) -> list[str]:
        return [r.diagnostic for r in self.replacements if r.diagnostic]

    def restore(self) -> list[str]:
        """Undo every replacement: the original token texts, in order."""
        out: list[str] = []
        i = 0
        for r in self.replacements:
            out += self.words[i : r.out_start]
            out += [t.text for t in self.tokens[r.span.start : r.span.end]]
            i = r.out_end
        return out + self.words[i:]


def tn_tag(tokens: Sequence[Token], model: MultiTaskTagger | None) -> list[SpanTag]:
    """Model categories for non-standard word spans (outside tokens are dropped)."""
    if model is None:
        raise ModelNotLoaded("text normalization needs a trained tagger")
    tags = model.tag("tn", [t.text for t in tokens])
    return decode_labels(tags, model.tn_inventory)


def splice(
    text: str,
    tokens: Sequence[Token],
    spans: Sequence[SpanTag],
    rules: RuleSet,
    use_and: bool = True,
) -> NormalizedSentence:
    """Replace each span by its spoken form, keeping outside tokens verbatim."""
    result = NormalizedSentence(text, list(tokens), [])
    i = 0
    for span in sorted(spans, key=lambda s: s.start):
        result.words += [t.text for t in tokens[i : span.start]]
        words, origin, diag = post_handle(text, tokens, span, rules, use_and)
        out_start = len(result.words)
        result.words += words.split()
        result.replacements.append(
            Replacement(span, span_text(text, tokens, span), tuple(words.split()), out_start, len(result.words), origin, diag)
        )
        i = span.end
    result.words += [t.text for t in tokens[i:]]
    return result


def normalize(
    text: str,
    model: MultiTaskTagger | None,
    rules: RuleSet,
    use_and: bool = True,
) -> NormalizedSentence:
    """tokenize -> model tagging -> pre-handle rules -> post-handle verbalization -> splice."""
    tokens = tokenize(text)
    if not tokens:
        return NormalizedSentence(text, [], [])
    spans = tn_tag(tokens, model)
    spans = pre_handle(text, tokens, spans, rules)
    return splice(text, tokens, spans, rules, use_and)

