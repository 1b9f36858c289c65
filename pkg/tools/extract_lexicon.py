"""Regenerate the bundled lexicon and G2P dictionaries from a CMUdict file.

    python tools/extract_lexicon.py path/to/cmudict.dict

Writes ``lexicon.dict`` (runtime mini-lexicon), ``g2p_toy.dict`` (20-word
overfit set) and ``g2p_train.dict`` (OOV training dictionary) into
``src/unifront/data``.
"""

import hashlib
import re
import sys
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "unifront" / "data"
FIX = DATA / "fixtures"

# Absent from the runtime lexicon so that they exercise the OOV path.
OOV_WORDS = {"wombat", "jazz"}

TOY_WORDS = [
    "wombat", "jazz", "coin", "join", "zone", "boy", "toy", "noise", "voice", "zip",
    "point", "cat", "dog", "fish", "phone", "light", "night", "kite", "moon", "ship",
]

# Words whose spelling patterns matter for reading "zoin"-like forms.
TRAIN_EXTRA = [
    "coin", "coins", "join", "joins", "joint", "loin", "loins", "groin", "point", "points",
    "oink", "boing", "boink", "zone", "zones", "zoo", "zoom", "zip", "zinc", "zing", "zen",
    "zero", "zeal", "zest", "zigzag", "zombie", "boy", "toy", "joy", "soy", "oil", "boil",
    "soil", "toil", "foil", "coil", "noise", "voice", "choice", "poise", "moist", "hoist",
]

COMMON = """
a about above after again against all also always am an and another any are around as ask at away
back bad be because been before being best better between big black blue book books both boy bring
brown but buy by call called came can car cat change child children city close cold come could country
cup cut day did do does dog done door down draw drink drive during each early eat end even every eye
eyes face fall family far fast father feel few find fine fire first five food for four friend from full
game gave get girl give go good got great green group had hand happy hard has have he head hear help
her here high him his hold home hot house how i if important in into is it its just keep kind know
land large last late learn left let life light like line little live long look made make man many may
me mean men might mind money more morning most mother move much music must my name near need never new
next nice night no not now number of off often old on once one only open or other our out over own page
paper part people picture place play please point put question quick quickly quite rain read ready real
red right river road room run said same saw say school sea second see seem sentence set she should show
side since small so some something sometimes song soon sound speak stand start state still stop story
street study such sun sure table take talk tell than thank that the their them then there these they
thing think this those thought three through time to today together too took tree true try turn two
under until up us use very voice walk want warm was watch water way we well went were what when where
which while white who why will with without word words work world would write year yes yet you young
your hello pipe cheek swim likes rolled tear lead used record present object wind hundred thousand
million billion trillion point minus plus times equals half halves quarter quarters percent dollar
dollars cent cents pound pounds euro euros street avenue road kilogram kilograms kilometer kilometers
o'clock first second third fourth fifth sixth seventh eighth ninth tenth eleventh twelfth twentieth
thirtieth hundredth thousandth dot com at slash dash hash star colon underscore seconds minutes hours
""".split()

NUMBERS = (
    "zero one two three four five six seven eight nine ten eleven twelve thirteen fourteen fifteen "
    "sixteen seventeen eighteen nineteen twenty thirty forty fifty sixty seventy eighty ninety"
).split()
MONTHS = "january february march april may june july august september october november december".split()
DAYS = "monday tuesday wednesday thursday friday saturday sunday".split()
LETTERS = list("abcdefghijklmnopqrstuvwxyz")

# Order and additions that differ from CMUdict.
OVERRIDES = {
    "hello": ["HH EH0 L OW1", "HH AH0 L OW1"],
    "lead": ["L IY1 D", "L EH1 D"],
    "used": ["Y UW1 Z D", "Y UW1 S T"],
    "ds": ["D IY1 Z"],
}


def load_cmudict(path):
    entries = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith(";;;"):
            continue
        word, *phones = line.split()
        if "#" in phones:
            phones = phones[: phones.index("#")]
        base = re.sub(r"\(\d+\)$", "", word).lower()
        entries.setdefault(base, []).append(" ".join(phones))
    return entries


def fixture_words():
    words = set()
    for line in (FIX / "tn_toy.tsv").read_text().splitlines():
        if line.startswith("#") or line.startswith("<eos>"):
            continue
        tok, cls, verb = line.split("\t")
        words.update((tok if verb == "<self>" else verb).lower().split())
    for line in (FIX / "prosody_toy.txt").read_text().splitlines():
        if not line.startswith("#"):
            words.update(re.sub(r"#\d", "", line).split())
    for line in (FIX / "pos_toy.txt").read_text().splitlines():
        if not line.startswith("#"):
            for item in line.split():
                words.update(item.rsplit("/", 1)[0].lower().split("_"))
    for line in (FIX / "polyphone_toy.tsv").read_text().splitlines():
        if not line.startswith("#"):
            words.update(line.split("\t")[2].split())
    for line in (FIX / "g2p_ablation.tsv").read_text().splitlines():
        if line.strip() and not line.startswith("#"):
            words.add(line.split("\t")[0])
    for line in (FIX / "frontend.txt").read_text().splitlines():
        if not line.startswith("#"):
            words.update(w.lower() for w in re.findall(r"[A-Za-z]+(?:'[A-Za-z]+)?", line))
    return {w for w in words if re.fullmatch(r"[a-z']+", w)}


def write_dict(path, items, header):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f";;; {header}\n")
        for word, prons in items:
            for i, pron in enumerate(prons):
                key = word if i == 0 else f"{word}({i + 1})"
                fh.write(f"{key}  {pron}\n")


def main(cmu_path):
    cmu = load_cmudict(cmu_path)
    cmu.update(OVERRIDES)
    wanted = fixture_words() | set(COMMON) | set(NUMBERS) | set(MONTHS) | set(DAYS) | set(LETTERS) | {"ds"}
    wanted -= OOV_WORDS
    missing = sorted(w for w in wanted if w not in cmu)
    if missing:
        print("not in CMUdict (skipped):", " ".join(missing))
    lex = sorted((w, cmu[w]) for w in wanted if w in cmu)
    write_dict(DATA / "lexicon.dict", lex, "Runtime mini-lexicon extracted from CMUdict (BSD license); first entry is the default.")

    write_dict(FIX / "g2p_toy.dict", [(w, cmu[w][:1]) for w in TOY_WORDS], "20-word OOV overfit set from CMUdict.")

    def keep(w):
        return re.fullmatch(r"[a-z]{2,10}", w) and int(hashlib.sha256(w.encode()).hexdigest(), 16) % 30 == 0

    train = {w: cmu[w][:1] for w in cmu if keep(w)}
    train.update({w: cmu[w][:1] for w in TRAIN_EXTRA if w in cmu})
    train.pop("zoin", None)
    write_dict(DATA / "g2p_train.dict", sorted(train.items()), "OOV training dictionary: hash-sampled CMUdict subset.")

    # A small slice of the held-out part of that dictionary for quick sweeps.
    from unifront.corpora import hash_split

    held_out = hash_split(sorted((w, p[0]) for w, p in train.items()), seed=0)[2]
    write_dict(FIX / "g2p_test.dict", [(w, [p]) for w, p in held_out[:: len(held_out) // 30][:30]], "Held-out words of g2p_train.dict (seed 0 test split).")
    print(f"lexicon {len(lex)} words, g2p_train {len(train)} words")


if __name__ == "__main__":
    main(sys.argv[1])
