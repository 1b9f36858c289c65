"""Text normalization: category tagging, rule correction and verbalization."""

from .normalize import NormalizedSentence, Replacement, normalize, splice, tn_tag
from .rules import (
    HotwordEntry,
    RuleFileError,
    RuleSet,
    TnRule,
    find_hotwords,
    parse_hotwords,
    parse_rules,
    post_handle,
    pre_handle,
)
from .verbalize import VERBALIZERS, VerbalizeError, number_words, try_verbalize, verbalize

__all__ = [
    "HotwordEntry",
    "NormalizedSentence",
    "Replacement",
    "RuleFileError",
    "RuleSet",
    "TnRule",
    "VERBALIZERS",
    "VerbalizeError",
    "find_hotwords",
    "normalize",
    "number_words",
    "parse_hotwords",
    "parse_rules",
    "post_handle",
    "pre_handle",
    "splice",
    "tn_tag",
    "try_verbalize",
    "verbalize",
]
