"""Spoken-form verbalizers, one per text normalization category.

Every verbalizer takes the span's source text and returns lowercase words
separated by single spaces. Unparseable input raises :class:`VerbalizeError`;
:func:`verbalize` catches it and falls back to a character-by-character
VERBATIM reading.
"""

from __future__ import annotations

import logging
import re
import unicodedata
from typing import Callable

log = logging.getLogger(__name__)


class VerbalizeError(ValueError):
    pass


ONES = (
    "zero one two three four five six seven eight nine ten eleven twelve thirteen "
    "fourteen fifteen sixteen seventeen eighteen nineteen"
).split()
TENS = "_ _ twenty thirty forty fifty sixty seventy eighty ninety".split()
SCALES = ("", "thousand", "million", "billion", "trillion")
LIMIT = 10**15

_ORDINAL_IRREGULAR = {
    "one": "first",
    "two": "second",
    "three": "third",
    "five": "fifth",
    "eight": "eighth",
    "nine": "ninth",
    "twelve": "twelfth",
}

# ---------------------------------------------------------------------------
# numbers


def _below_hundred(n: int) -> list[str]:
    if n < 20:
        return [ONES[n]]
    tens, unit = divmod(n, 10)
    return [TENS[tens]] + ([ONES[unit]] if unit else [])


def _below_thousand(n: int, use_and: bool) -> list[str]:
    hundreds, rest = divmod(n, 100)
    words = []
    if hundreds:
        words += [ONES[hundreds], "hundred"]
        if rest and use_and:
            words.append("and")
    if rest:
        words += _below_hundred(rest)
    return words


def number_words(n: int, use_and: bool = True) -> str:
    """Long-form English for ``|n| < 10**15``.

    With ``use_and`` an "and" follows "hundred" and precedes a final group
    below one hundred ("one thousand and one").
    """
    if abs(n) >= LIMIT:
        raise VerbalizeError(f"{n} is out of range")
    if n < 0:
        return "minus " + number_words(-n, use_and)
    if n == 0:
        return "zero"
    groups = []
    while n:
        n, g = divmod(n, 1000)
        groups.append(g)
    words: list[str] = []
    for scale in range(len(groups) - 1, -1, -1):
        g = groups[scale]
        if not g:
            continue
        if scale == 0 and g < 100 and words and use_and:
            words.append("and")
        words += _below_thousand(g, use_and)
        if scale:
            words.append(SCALES[scale])
    return " ".join(words)


def _parse_int(text: str) -> int:
    t = text.strip().replace(" ", "")
    if not re.fullmatch(r"[-+−]?(\d{1,3}(,\d{3})+|\d+)", t):
        raise VerbalizeError(f"not an integer: {text!r}")
    return int(t.replace(",", "").replace("−", "-"))


def verbalize_cardinal(text: str, use_and: bool = True) -> str:
    return number_words(_parse_int(text), use_and)


def ordinal_of(words: str) -> str:
    """Turn the last word of a cardinal reading into its ordinal form."""
    head, _, last = words.rpartition(" ")
    if last in _ORDINAL_IRREGULAR:
        last = _ORDINAL_IRREGULAR[last]
    elif last.endswith("y"):
        last = last[:-1] + "ieth"
    else:
        last += "th"
    return f"{head} {last}" if head else last


def verbalize_ordinal(text: str, use_and: bool = True) -> str:
    m = re.fullmatch(r"\s*(\d[\d,]*)\s*(st|nd|rd|th)?\.?\s*", text, re.I)
    if not m:
        raise VerbalizeError(f"not an ordinal: {text!r}")
    return ordinal_of(number_words(_parse_int(m.group(1)), use_and))


def _is_digits(s: str) -> bool:
    # str.isdigit also accepts superscripts and other digits int() cannot read.
    return s.isascii() and s.isdigit()


def verbalize_digit(text: str) -> str:
    """One word per digit; zero reads "o" unless it is the whole input."""
    t = text.strip()
    if not _is_digits(t):
        raise VerbalizeError(f"not a digit string: {text!r}")
    if t == "0":
        return "zero"
    return " ".join("o" if d == "0" else ONES[int(d)] for d in t)


def _digits_as_words(t: str, zero: str = "zero") -> list[str]:
    return [zero if d == "0" else ONES[int(d)] for d in t]


def _plural(word: str) -> str:
    if word.endswith("y"):
        return word[:-1] + "ies"
    if word.endswith(("s", "x")):
        return word + "es"
    return word + "s"


def _decimal_words(text: str, use_and: bool = True) -> list[str]:
    t = text.strip().replace(",", "")
    m = re.fullmatch(r"([-+−])?(\d*)\.(\d+)|([-+−])?(\d+)", t)
    if not m:
        raise VerbalizeError(f"not a number: {text!r}")
    if m.group(5) is not None:
        return number_words(int(t.replace("−", "-")), use_and).split()
    words = ["minus"] if m.group(1) in ("-", "−") else []
    if m.group(2):
        words += number_words(int(m.group(2)), use_and).split()
    words.append("point")
    words += _digits_as_words(m.group(3))
    return words


_SCALE_WORDS = {
    "thousand": "thousand",
    "k": "thousand",
    "million": "million",
    "m": "million",
    "mn": "million",
    "billion": "billion",
    "bn": "billion",
    "b": "billion",
    "trillion": "trillion",
}


def verbalize_decimal(text: str, use_and: bool = True) -> str:
    m = re.fullmatch(r"\s*([-+−]?[\d,]*\.?\d+)\s*([A-Za-z]+)?\s*", text)
    if not m:
        raise VerbalizeError(f"not a decimal: {text!r}")
    words = _decimal_words(m.group(1), use_and)
    if m.group(2):
        scale = _SCALE_WORDS.get(m.group(2).lower())
        if scale is None:
            raise VerbalizeError(f"unknown scale {m.group(2)!r}")
        words.append(scale)
    return " ".join(words)


# ---------------------------------------------------------------------------
# letters


_SYMBOL_WORDS = {
    "&": "and",
    "@": "at",
    "#": "hash",
    "%": "percent",
    "+": "plus",
    "=": "equals",
    "$": "dollar",
    "£": "pound",
    "€": "euro",
    "-": "dash",
    "/": "slash",
    "\\": "backslash",
    "*": "star",
    ".": "dot",
    "_": "underscore",
    "~": "tilde",
    "°": "degree",
    ":": "colon",
    "!": "exclamation mark",
    "?": "question mark",
}


def _char_words(ch: str) -> list[str]:
    if ch.isspace():
        return []
    if _is_digits(ch):
        return [ONES[int(ch)]]
    if ch.isalpha():
        return [ch.lower()]
    if ch in _SYMBOL_WORDS:
        return _SYMBOL_WORDS[ch].split()
    name = unicodedata.name(ch, "")
    return re.findall(r"[a-z]+", name.lower())


def verbalize_verbatim(text: str) -> str:
    """Character-by-character reading; total over every string."""
    return " ".join(w for ch in text for w in _char_words(ch) if is_spoken(w))


def verbalize_letters(text: str) -> str:
    t = text.strip()
    if not t or not re.fullmatch(r"[A-Za-z0-9.&'\- ]+", t) or not re.search(r"[A-Za-z]", t):
        raise VerbalizeError(f"not a letter sequence: {text!r}")
    words = []
    for ch in t:
        if ch.isalpha():
            words.append(ch.lower())
        elif _is_digits(ch):
            words.append(ONES[int(ch)])
        elif ch == "&":
            words.append("and")
    return " ".join(words)


def verbalize_letterss(text: str) -> str:
    """Plural letter sequence: the final letter fuses with the plural "s" ("dvds" -> "d v ds")."""
    m = re.fullmatch(r"\s*([A-Za-z.&\-]*[A-Za-z])\.?'?[sS]\s*", text)
    if not m:
        raise VerbalizeError(f"not a plural letter sequence: {text!r}")
    body = [ch.lower() for ch in m.group(1) if ch.isalpha()]
    return " ".join(body[:-1] + [body[-1] + "s"])


# ---------------------------------------------------------------------------
# dates and times


MONTHS = "january february march april may june july august september october november december".split()
_MONTH_LOOKUP = {m: i + 1 for i, m in enumerate(MONTHS)}
_MONTH_LOOKUP.update({m[:3]: i + 1 for i, m in enumerate(MONTHS)})
_MONTH_LOOKUP["sept"] = 9
WEEKDAYS = "monday tuesday wednesday thursday friday saturday sunday".split()
_WEEKDAY_LOOKUP = {d: d for d in WEEKDAYS}
_WEEKDAY_LOOKUP.update({d[:3]: d for d in WEEKDAYS})


def year_words(year: int) -> str:
    if not 0 < year < 10000:
        raise VerbalizeError(f"year {year} out of range")
    if year < 1000 or year % 1000 == 0 or 2000 < year < 2010:
        return number_words(year, use_and=False)
    hi, lo = divmod(year, 100)
    if lo == 0:
        return f"{number_words(hi)} hundred"
    if lo < 10:
        return f"{number_words(hi)} o {ONES[lo]}"
    return f"{number_words(hi)} {number_words(lo)}"


def _month(tok: str) -> int:
    key = tok.lower().rstrip(".")
    if key not in _MONTH_LOOKUP:
        raise VerbalizeError(f"unknown month {tok!r}")
    return _MONTH_LOOKUP[key]


def _day(tok: str) -> int:
    m = re.fullmatch(r"(\d{1,2})(st|nd|rd|th)?", tok, re.I)
    if not m or not 1 <= int(m.group(1)) <= 31:
        raise VerbalizeError(f"bad day {tok!r}")
    return int(m.group(1))


def _year(tok: str) -> int:
    if not re.fullmatch(r"\d{4}|'\d{2}", tok):
        raise VerbalizeError(f"bad year {tok!r}")
    return int(tok) if tok[0] != "'" else int(tok[1:])


def _date_parts(month: int | None, day: int | None, year: int | None, day_first: bool = False) -> str:
    words = []
    if day_first and day is not None:
        words += ["the", ordinal_of(number_words(day)), "of"]
    if month is not None:
        if not 1 <= month <= 12:
            raise VerbalizeError(f"bad month {month}")
        words.append(MONTHS[month - 1])
    if day is not None and not day_first:
        words.append(ordinal_of(number_words(day)))
    if year is not None:
        words.append(year_words(year) if year >= 100 else number_words(year))
    return " ".join(words)


def verbalize_date(text: str) -> str:
    t = text.strip()
    m = re.fullmatch(r"(\d{4})-(\d{1,2})-(\d{1,2})", t)
    if m:
        return _date_parts(int(m.group(2)), _day(m.group(3)), int(m.group(1)))
    m = re.fullmatch(r"(\d{1,2})[/.](\d{1,2})[/.](\d{4}|\d{2})", t)
    if m:
        a, b, y = int(m.group(1)), int(m.group(2)), m.group(3)
        year = int(y) if len(y) == 4 else 2000 + int(y) if int(y) < 30 else 1900 + int(y)
        if a > 12:
            return _date_parts(b, _day(m.group(1)), year, day_first=True)
        return _date_parts(a, _day(m.group(2)), year)
    m = re.fullmatch(r"(\d{4}|'\d{2}|\d{2})s", t)
    if m:
        y = m.group(1).lstrip("'")
        words = (year_words(int(y)) if len(y) == 4 else number_words(int(y))).split()
        return " ".join(words[:-1] + [_plural(words[-1])])
    if re.fullmatch(r"\d{4}", t):
        return year_words(int(t))

    toks = [x for x in re.split(r"[\s,]+", t) if x]
    words = []
    if toks and toks[0].lower().rstrip(".") in _WEEKDAY_LOOKUP:
        words.append(_WEEKDAY_LOOKUP[toks.pop(0).lower().rstrip(".")])
    if toks and toks[0].lower() == "the":
        toks.pop(0)
    if not toks:
        raise VerbalizeError(f"not a date: {text!r}")
    if _is_digits(toks[0][0]):
        day = _day(toks.pop(0))
        if toks and toks[0].lower() == "of":
            toks.pop(0)
        if not toks:
            raise VerbalizeError(f"not a date: {text!r}")
        month = _month(toks.pop(0))
        year = _year(toks.pop(0)) if toks else None
        day_first = True
    else:
        month = _month(toks.pop(0))
        day = _day(toks.pop(0)) if toks and not re.fullmatch(r"\d{4}", toks[0]) else None
        year = _year(toks.pop(0)) if toks else None
        day_first = False
    if toks:
        raise VerbalizeError(f"trailing text in date {text!r}")
    words.append(_date_parts(month, day, year, day_first))
    return " ".join(words)


def verbalize_time(text: str) -> str:
    m = re.fullmatch(r"\s*(\d{1,2})(?::(\d{2}))?(?::(\d{2}))?\s*([ap])?\.?\s*(m)?\.?\s*", text, re.I)
    if not m or (m.group(2) is None and m.group(4) is None) or bool(m.group(4)) != bool(m.group(5)):
        raise VerbalizeError(f"not a time: {text!r}")
    hour = int(m.group(1))
    minute = int(m.group(2) or 0)
    if hour > 24 or minute > 59:
        raise VerbalizeError(f"bad time {text!r}")
    words = [number_words(hour)]
    if minute == 0:
        if not m.group(4):
            words.append("o'clock")
    elif minute < 10:
        words += ["o", ONES[minute]]
    else:
        words.append(number_words(minute))
    if m.group(3) is not None and int(m.group(3)):
        sec = int(m.group(3))
        words += ["and", number_words(sec), "second" if sec == 1 else "seconds"]
    if m.group(4):
        words += [m.group(4).lower(), "m"]
    return " ".join(words)


# ---------------------------------------------------------------------------
# money, measures, fractions


_CURRENCY = {
    "$": ("dollar", "dollars", "cent", "cents"),
    "us$": ("dollar", "dollars", "cent", "cents"),
    "usd": ("dollar", "dollars", "cent", "cents"),
    "£": ("pound", "pounds", "penny", "pence"),
    "gbp": ("pound", "pounds", "penny", "pence"),
    "€": ("euro", "euros", "cent", "cents"),
    "eur": ("euro", "euros", "cent", "cents"),
    "¥": ("yen", "yen", "sen", "sen"),
    "yen": ("yen", "yen", "sen", "sen"),
    "dollars": ("dollar", "dollars", "cent", "cents"),
    "dollar": ("dollar", "dollars", "cent", "cents"),
}


def verbalize_money(text: str) -> str:
    t = text.strip()
    m = re.fullmatch(r"(US\$|[$£€¥])\s*([\d,]*\.?\d+)\s*([A-Za-z]+)?", t, re.I) or re.fullmatch(
        r"([\d,]*\.?\d+)\s*([A-Za-z]+)?\s*(USD|GBP|EUR|yen|dollars?)", t, re.I
    )
    if not m:
        raise VerbalizeError(f"not a money amount: {text!r}")
    if m.re.pattern.startswith("(US"):
        cur, amount, scale = m.group(1).lower(), m.group(2), m.group(3)
    else:
        amount, scale, cur = m.group(1), m.group(2), m.group(3).lower()
    one, many, sub_one, sub_many = _CURRENCY[cur]
    if scale:
        scale_word = _SCALE_WORDS.get(scale.lower())
        if scale_word is None:
            raise VerbalizeError(f"unknown scale {scale!r}")
        return f"{' '.join(_decimal_words(amount))} {scale_word} {many}"
    whole, _, frac = amount.replace(",", "").partition(".")
    units = int(whole or 0)
    if frac and len(frac) != 2:
        return f"{' '.join(_decimal_words(amount))} {many}"
    cents = int(frac or 0)
    parts = []
    if units or not cents:
        parts.append(f"{number_words(units)} {one if units == 1 else many}")
    if cents:
        parts.append(f"{number_words(cents)} {sub_one if cents == 1 else sub_many}")
    return " and ".join(parts)


_UNITS = {
    "kg": ("kilogram", "kilograms"),
    "g": ("gram", "grams"),
    "mg": ("milligram", "milligrams"),
    "km": ("kilometer", "kilometers"),
    "m": ("meter", "meters"),
    "cm": ("centimeter", "centimeters"),
    "mm": ("millimeter", "millimeters"),
    "mi": ("mile", "miles"),
    "ft": ("foot", "feet"),
    "in": ("inch", "inches"),
    "yd": ("yard", "yards"),
    "lb": ("pound", "pounds"),
    "lbs": ("pound", "pounds"),
    "oz": ("ounce", "ounces"),
    "%": ("percent", "percent"),
    "mph": ("mile per hour", "miles per hour"),
    "km/h": ("kilometer per hour", "kilometers per hour"),
    "kph": ("kilometer per hour", "kilometers per hour"),
    "h": ("hour", "hours"),
    "hr": ("hour", "hours"),
    "hrs": ("hour", "hours"),
    "min": ("minute", "minutes"),
    "s": ("second", "seconds"),
    "sec": ("second", "seconds"),
    "ms": ("millisecond", "milliseconds"),
    "l": ("liter", "liters"),
    "ml": ("milliliter", "milliliters"),
    "kb": ("kilobyte", "kilobytes"),
    "mb": ("megabyte", "megabytes"),
    "gb": ("gigabyte", "gigabytes"),
    "tb": ("terabyte", "terabytes"),
    "hz": ("hertz", "hertz"),
    "khz": ("kilohertz", "kilohertz"),
    "mhz": ("megahertz", "megahertz"),
    "ghz": ("gigahertz", "gigahertz"),
    "w": ("watt", "watts"),
    "kw": ("kilowatt", "kilowatts"),
    "v": ("volt", "volts"),
    "°c": ("degree celsius", "degrees celsius"),
    "°f": ("degree fahrenheit", "degrees fahrenheit"),
    "°": ("degree", "degrees"),
    "sq ft": ("square foot", "square feet"),
    "sq m": ("square meter", "square meters"),
}


def verbalize_measure(text: str) -> str:
    m = re.fullmatch(r"\s*([-+−]?[\d,]*\.?\d+)\s*(.+?)\s*", text)
    if not m:
        raise VerbalizeError(f"not a measure: {text!r}")
    unit_key = re.sub(r"\s+", " ", m.group(2).lower())
    if unit_key not in _UNITS:
        raise VerbalizeError(f"unknown unit {m.group(2)!r}")
    number = m.group(1)
    words = _decimal_words(number)
    one, many = _UNITS[unit_key]
    singular = "." not in number and number.lstrip("+").replace(",", "") == "1"
    return " ".join(words + [one if singular else many])


_DENOMINATORS = {2: ("half", "halves"), 4: ("quarter", "quarters")}


def _fraction_words(num: int, den: int) -> str:
    if den == 0:
        raise VerbalizeError("zero denominator")
    if den in _DENOMINATORS:
        one, many = _DENOMINATORS[den]
    else:
        one = ordinal_of(number_words(den))
        many = _plural(one)
    return f"{number_words(num)} {one if num == 1 else many}"


def verbalize_fraction(text: str) -> str:
    m = re.fullmatch(r"\s*(?:(\d+)\s+)?(\d+)\s*/\s*(\d+)\s*", text)
    if not m:
        raise VerbalizeError(f"not a fraction: {text!r}")
    num, den = int(m.group(2)), int(m.group(3))
    frac = _fraction_words(num, den)
    if m.group(1) is None:
        return frac
    if num == 1:
        frac = "a " + frac.split(" ", 1)[1]
    return f"{number_words(int(m.group(1)))} and {frac}"


# ---------------------------------------------------------------------------
# electronic, telephone, address


_SPELLED = {"www", "http", "https", "ftp", "html", "php", "pdf", "ftp"}
_ELECTRONIC_SYMBOLS = {
    ".": "dot",
    "@": "at",
    "/": "slash",
    ":": "colon",
    "-": "dash",
    "_": "underscore",
    "#": "hash",
    "~": "tilde",
    "?": "question mark",
    "=": "equals",
    "&": "and",
    "%": "percent",
    "+": "plus",
}


def verbalize_electronic(text: str) -> str:
    t = text.strip().lower()
    if not t or re.search(r"\s", t):
        raise VerbalizeError(f"not an electronic address: {text!r}")
    words = []
    for run in re.findall(r"[a-z]+|\d+|.", t):
        if run.isalpha():
            spell = run in _SPELLED or len(run) == 1 or not re.search(r"[aeiouy]", run)
            words += list(run) if spell else [run]
        elif _is_digits(run):
            words += _digits_as_words(run)
        elif run in _ELECTRONIC_SYMBOLS:
            words += _ELECTRONIC_SYMBOLS[run].split()
        else:
            raise VerbalizeError(f"unexpected character {run!r} in {text!r}")
    return " ".join(words)


def verbalize_telephone(text: str) -> str:
    t = text.strip()
    if not re.fullmatch(r"\+?[\dA-Za-z()\-. ]+", t) or not re.search(r"\d", t):
        raise VerbalizeError(f"not a telephone number: {text!r}")
    words = []
    for ch in t:
        if _is_digits(ch):
            words.append("o" if ch == "0" else ONES[int(ch)])
        elif ch.isalpha():
            words.append(ch.lower())
    return " ".join(words)


_STREET = {
    "st": "street",
    "ave": "avenue",
    "av": "avenue",
    "rd": "road",
    "blvd": "boulevard",
    "dr": "drive",
    "ln": "lane",
    "ct": "court",
    "pl": "place",
    "hwy": "highway",
    "pkwy": "parkway",
    "apt": "apartment",
    "ste": "suite",
    "n": "north",
    "s": "south",
    "e": "east",
    "w": "west",
    "ne": "northeast",
    "nw": "northwest",
    "se": "southeast",
    "sw": "southwest",
}


def _house_number(t: str) -> str:
    n = int(t)
    if len(t) <= 2 or t.startswith("0"):
        return number_words(n) if not t.startswith("0") else " ".join(_digits_as_words(t, "o"))
    if len(t) == 3:
        hi, lo = divmod(n, 100)
        return f"{ONES[hi]} {'o ' + ONES[lo] if lo < 10 else number_words(lo)}" if lo else f"{ONES[hi]} hundred"
    if len(t) == 4:
        return year_words(n)
    return " ".join(_digits_as_words(t, "o"))


def verbalize_address(text: str) -> str:
    toks = re.findall(r"[A-Za-z]+|\d+", text)
    if not toks or not any(_is_digits(x) for x in toks):
        raise VerbalizeError(f"not an address: {text!r}")
    words = []
    for i, tok in enumerate(toks):
        if _is_digits(tok):
            words.append(_house_number(tok))
        else:
            low = tok.lower()
            # Compass points only expand when they stand as their own word.
            words.append(_STREET.get(low, low) if (len(low) > 2 or i > 0) else low)
    return " ".join(words)


# ---------------------------------------------------------------------------
# math and scores


_MATH_OPS = {
    "+": "plus",
    "-": "minus",
    "−": "minus",
    "*": "times",
    "×": "times",
    "x": "times",
    "/": "divided by",
    "÷": "divided by",
    "=": "equals",
    "^": "to the power of",
    "<": "is less than",
    ">": "is greater than",
    "≤": "is less than or equal to",
    "≥": "is greater than or equal to",
    "≠": "is not equal to",
    "±": "plus or minus",
    "(": "open bracket",
    ")": "close bracket",
    "%": "percent",
}


def verbalize_math(text: str) -> str:
    t = text.strip()
    runs = re.findall(r"\d+(?:\.\d+)?|[A-Za-z]+|\S", t)
    if not runs or not any(_is_digits(r[0]) or r.isalpha() for r in runs) or not any(r in _MATH_OPS for r in runs):
        raise VerbalizeError(f"not a math expression: {text!r}")
    words = []
    for i, run in enumerate(runs):
        between_numbers = 0 < i < len(runs) - 1 and _is_digits(runs[i - 1][0]) and _is_digits(runs[i + 1][0])
        if _is_digits(run[0]):
            words += _decimal_words(run)
        elif run.lower() == "x" and between_numbers:
            words.append("times")
        elif run.isalpha():
            words += list(run.lower()) if len(run) <= 2 else [run.lower()]
        elif run in _MATH_OPS:
            words.append(_MATH_OPS[run])
        else:
            raise VerbalizeError(f"unexpected symbol {run!r} in {text!r}")
    return " ".join(words)


def verbalize_score(text: str) -> str:
    m = re.fullmatch(r"\s*(\d+)\s*[-–:]\s*(\d+)\s*", text)
    if not m:
        raise VerbalizeError(f"not a score: {text!r}")
    return f"{number_words(int(m.group(1)))} {number_words(int(m.group(2)))}"


def verbalize_plain(text: str) -> str:
    t = text.strip().lower()
    if not re.fullmatch(r"[^\W\d_]+(?:'[^\W\d_]+)*", t):
        raise VerbalizeError(f"not a plain word: {text!r}")
    return t


def verbalize_punct(text: str) -> str:
    return ""


# ---------------------------------------------------------------------------


VERBALIZERS: dict[str, Callable[[str], str]] = {
    "PLAIN": verbalize_plain,
    "PUNCT": verbalize_punct,
    "CARDINAL": verbalize_cardinal,
    "ORDINAL": verbalize_ordinal,
    "DIGIT": verbalize_digit,
    "DECIMAL": verbalize_decimal,
    "MONEY": verbalize_money,
    "MEASURE": verbalize_measure,
    "FRACTION": verbalize_fraction,
    "DATE": verbalize_date,
    "TIME": verbalize_time,
    "ELECTRONIC": verbalize_electronic,
    "ADDRESS": verbalize_address,
    "TELEPHONE": verbalize_telephone,
    "LETTERS": verbalize_letters,
    "LETTERSS": verbalize_letterss,
    "VERBATIM": verbalize_verbatim,
    "MATH": verbalize_math,
    "SCORE": verbalize_score,
}

_SPOKEN_RE = re.compile(r"(?:[^\W\d_]+(?:'[^\W\d_]*)?)(?: [^\W\d_]+(?:'[^\W\d_]*)?)*|")


def is_spoken(words: str) -> bool:
    """True when ``words`` is space-separated lowercase letters/apostrophes (or empty)."""
    return words == words.lower() and _SPOKEN_RE.fullmatch(words) is not None


def try_verbalize(text: str, category: str, use_and: bool = True) -> tuple[str, str | None]:
    """Return ``(words, diagnostic)``; the diagnostic is set when the VERBATIM fallback was used."""
    fn = VERBALIZERS.get(category)
    if fn is None:
        raise KeyError(f"no verbalizer for category {category!r}")
    try:
        if fn in (verbalize_cardinal, verbalize_ordinal, verbalize_decimal):
            words = fn(text, use_and=use_and)
        else:
            words = fn(text)
        if not is_spoken(words):
            raise VerbalizeError(f"{category} verbalizer produced {words!r}")
        return words, None
    except VerbalizeError as exc:
        msg = f"{category} fallback to VERBATIM for {text!r}: {exc}"
        log.warning(msg)
        return verbalize_verbatim(text), msg


def verbalize(text: str, category: str, use_and: bool = True) -> str:
    return try_verbalize(text, category, use_and)[0]
