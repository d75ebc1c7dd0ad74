"""Text normalization pipeline.

Each researcher's publication titles, abstracts, and (optionally repeated)
keywords are concatenated into one combined document, then normalized:
HTML stripping, lowercasing, ASCII-letter tokenization, short-token and
stopword removal, and Porter stemming.
"""

from __future__ import annotations

import hashlib
import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources

from .ingest import PublicationSet, Researcher, select_publication_set

MIN_TOKEN_LEN = 2
MAX_EMPHASIS = 10

# sha256 of the bundled stopword list; verified on import so a corrupted
# data file fails loudly instead of silently changing every embedding.
STOPWORDS_SHA256 = "4e22be0ad71ae1c41dd7a8f944e851ead671d114edf4faad1ee8c698d2ba5084"

_TAG_RE = re.compile(r"</?[A-Za-z!?][^>]*>")
_ENTITY_RE = re.compile(r"&(amp|lt|gt|quot|#[0-9]+);")
_TOKEN_RE = re.compile(r"[A-Za-z]+")

_ENTITY_MAP = {"amp": "&", "lt": "<", "gt": ">", "quot": '"'}


def _load_stopwords() -> frozenset[str]:
    raw = resources.files("scholarmap.data").joinpath("stopwords.txt").read_text("utf-8")
    digest = hashlib.sha256(raw.encode("utf-8")).hexdigest()
    if digest != STOPWORDS_SHA256:
        raise RuntimeError(f"stopword list checksum mismatch: {digest}")
    return frozenset(raw.split())


STOPWORDS = _load_stopwords()


@dataclass(frozen=True)
class Document:
    researcher_id: str
    tokens: tuple[str, ...]
    token_counts: dict[str, int]

    def is_empty(self) -> bool:
        return not self.tokens


def strip_html(text: str) -> str:
    """Remove <...> tags (each replaced by a space) and decode basic entities."""

    def _decode(m: re.Match) -> str:
        name = m.group(1)
        if name.startswith("#"):
            try:
                return chr(int(name[1:]))
            except (ValueError, OverflowError):
                return m.group(0)
        return _ENTITY_MAP[name]

    return _ENTITY_RE.sub(_decode, _TAG_RE.sub(" ", text))


def tokenize(text: str) -> list[str]:
    """Split into runs of ASCII letters; everything else is a separator."""
    return _TOKEN_RE.findall(text)


def normalize(text: str) -> list[str]:
    """Full pipeline: strip HTML, lowercase, tokenize, length/stopword filter, stem.

    Stems that collapse into a stopword or below the length floor are dropped
    too, so every output token satisfies the Document invariants.
    """
    out = []
    for token in tokenize(strip_html(text).lower()):
        if len(token) < MIN_TOKEN_LEN or token in STOPWORDS:
            continue
        stemmed = stem(token)
        if len(stemmed) < MIN_TOKEN_LEN or stemmed in STOPWORDS:
            continue
        out.append(stemmed)
    return out


def build_document(r: Researcher, pub_set: PublicationSet, emphasis: int) -> Document:
    """Combined document for one researcher: titles + abstracts, then each
    keyword string repeated `emphasis` times. emphasis = 0 drops keywords."""
    if not 0 <= emphasis <= MAX_EMPHASIS:
        raise ValueError(f"emphasis {emphasis} outside [0, {MAX_EMPHASIS}]")
    parts = []
    for pub in select_publication_set(r, pub_set):
        parts.append(pub.title)
        parts.append(pub.abstract)
    for kw in r.keywords:
        parts.extend([kw] * emphasis)
    tokens = tuple(normalize(" ".join(parts)))
    return Document(researcher_id=r.id, tokens=tokens, token_counts=dict(Counter(tokens)))


# ---------------------------------------------------------------------------
# Porter stemmer (original 1980 algorithm, steps 1a through 5b)
# ---------------------------------------------------------------------------

_VOWELS = "aeiou"


def _is_cons(word: str, i: int) -> bool:
    c = word[i]
    if c in _VOWELS:
        return False
    if c == "y":
        return i == 0 or not _is_cons(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of vowel-consonant sequences [C](VC)^m[V]."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        if _is_cons(stem, i):
            if prev_vowel:
                m += 1
            prev_vowel = False
        else:
            prev_vowel = True
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_cons(stem, i) for i in range(len(stem)))


def _ends_double_cons(word: str) -> bool:
    return len(word) >= 2 and word[-1] == word[-2] and _is_cons(word, len(word) - 1)


def _ends_cvc(word: str) -> bool:
    if len(word) < 3:
        return False
    return (
        _is_cons(word, len(word) - 3)
        and not _is_cons(word, len(word) - 2)
        and _is_cons(word, len(word) - 1)
        and word[-1] not in "wxy"
    )


def _step1ab(word: str) -> str:
    if word.endswith("sses"):
        word = word[:-2]
    elif word.endswith("ies"):
        word = word[:-2]
    elif not word.endswith("ss") and word.endswith("s"):
        word = word[:-1]

    if word.endswith("eed"):
        if _measure(word[:-3]) > 0:
            word = word[:-1]
    else:
        trimmed = None
        if word.endswith("ed") and _has_vowel(word[:-2]):
            trimmed = word[:-2]
        elif word.endswith("ing") and _has_vowel(word[:-3]):
            trimmed = word[:-3]
        if trimmed is not None:
            word = trimmed
            if word.endswith(("at", "bl", "iz")):
                word += "e"
            elif _ends_double_cons(word) and word[-1] not in "lsz":
                word = word[:-1]
            elif _measure(word) == 1 and _ends_cvc(word):
                word += "e"
    return word


def _step1c(word: str) -> str:
    if word.endswith("y") and _has_vowel(word[:-1]):
        word = word[:-1] + "i"
    return word


# Within each overlap chain the longer suffix comes first, matching the
# reference implementation's first-match-wins dispatch.
_STEP2_RULES = [
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
]

_STEP3_RULES = [
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
]

_STEP4_SUFFIXES = [
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
]


def _apply_rules(word: str, rules: list[tuple[str, str]], min_measure: int) -> str:
    for suffix, repl in rules:
        if word.endswith(suffix):
            stem_part = word[: len(word) - len(suffix)]
            if _measure(stem_part) > min_measure - 1:
                return stem_part + repl
            return word
    return word


def _step4(word: str) -> str:
    for suffix in _STEP4_SUFFIXES:
        if word.endswith(suffix):
            stem_part = word[: len(word) - len(suffix)]
            if _measure(stem_part) > 1:
                if suffix == "ion" and not stem_part.endswith(("s", "t")):
                    return word
                return stem_part
            return word
    return word


def _step5(word: str) -> str:
    if word.endswith("e"):
        stem_part = word[:-1]
        m = _measure(stem_part)
        if m > 1 or (m == 1 and not _ends_cvc(stem_part)):
            word = stem_part
    if _measure(word) > 1 and _ends_double_cons(word) and word.endswith("l"):
        word = word[:-1]
    return word


def stem(token: str) -> str:
    """Porter-stem one lowercase ASCII token."""
    if len(token) <= 2:
        return token
    word = _step1ab(token)
    word = _step1c(word)
    word = _apply_rules(word, _STEP2_RULES, 1)
    word = _apply_rules(word, _STEP3_RULES, 1)
    word = _step4(word)
    word = _step5(word)
    return word
