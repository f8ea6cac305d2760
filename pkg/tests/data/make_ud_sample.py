"""Regenerate the synthetic UD-style English sample used by the tests.

    python tests/data/make_ud_sample.py

Sentences come from a small phrase grammar over a Zipf-weighted lexicon,
annotated with UPOS and UD FEATS. The output files are committed; this
script only documents how they were made.
"""

import random
from pathlib import Path

HERE = Path(__file__).parent
SEED = 20170301

PRON_NOM = [
    ("I", "Case=Nom|Number=Sing|Person=1|PronType=Prs"),
    ("we", "Case=Nom|Number=Plur|Person=1|PronType=Prs"),
    ("they", "Case=Nom|Number=Plur|Person=3|PronType=Prs"),
    ("he", "Case=Nom|Gender=Masc|Number=Sing|Person=3|PronType=Prs"),
    ("she", "Case=Nom|Gender=Fem|Number=Sing|Person=3|PronType=Prs"),
    ("you", "Case=Nom|Person=2|PronType=Prs"),
    ("it", "Gender=Neut|Number=Sing|Person=3|PronType=Prs"),
]
PRON_ACC = [
    ("me", "Case=Acc|Number=Sing|Person=1|PronType=Prs"),
    ("us", "Case=Acc|Number=Plur|Person=1|PronType=Prs"),
    ("them", "Case=Acc|Number=Plur|Person=3|PronType=Prs"),
    ("him", "Case=Acc|Gender=Masc|Number=Sing|Person=3|PronType=Prs"),
    ("it", "Gender=Neut|Number=Sing|Person=3|PronType=Prs"),
]
PRON_POSS = [
    ("my", "Number=Sing|Person=1|Poss=Yes|PronType=Prs"),
    ("our", "Number=Plur|Person=1|Poss=Yes|PronType=Prs"),
    ("their", "Number=Plur|Person=3|Poss=Yes|PronType=Prs"),
    ("his", "Gender=Masc|Number=Sing|Person=3|Poss=Yes|PronType=Prs"),
    ("her", "Gender=Fem|Number=Sing|Person=3|Poss=Yes|PronType=Prs"),
    ("your", "Person=2|Poss=Yes|PronType=Prs"),
]
DET_SG = [
    ("the", "Definite=Def|PronType=Art"),
    ("a", "Definite=Ind|PronType=Art"),
    ("this", "Number=Sing|PronType=Dem"),
    ("that", "Number=Sing|PronType=Dem"),
    ("every", "PronType=Tot"),
]
DET_PL = [
    ("the", "Definite=Def|PronType=Art"),
    ("these", "Number=Plur|PronType=Dem"),
    ("those", "Number=Plur|PronType=Dem"),
    ("some", "PronType=Ind"),
    ("all", "PronType=Tot"),
]

NOUNS = """card meal menu receipt transaction total price order account payment
store customer service day week time restaurant waiter bill friend phone room
hotel flight ticket problem company manager dinner drink table book email
website number address name family city street car refund delivery package
coffee breakfast lunch booking reservation seat bag line app screen charge
review experience staff owner kitchen dish pizza sandwich salad dessert bottle
menu balance statement discount coupon fee tip branch machine office doctor
appointment message password login month year morning evening night weekend
trip train bus station airport gate agent desk counter shop market mall product
item size color shirt shoe jacket gift card""".split()
IRREG_PLURAL = {"family": "families", "city": "cities", "delivery": "deliveries",
                "company": "companies", "dish": "dishes", "sandwich": "sandwiches",
                "address": "addresses", "bus": "buses", "shoe": "shoes",
                "package": "packages", "booking": "bookings", "staff": "staff",
                "coffee": "coffees", "lunch": "lunches", "class": "classes"}

PROPN = """John Mary Google Seattle Amazon Paris Monday Friday London Visa
Boston Sarah David Apple Chicago Tuesday Emma Delta Berlin""".split()

# base, past, participle
VERBS = [
    ("use", "used", "used"), ("purchase", "purchased", "purchased"),
    ("check", "checked", "checked"), ("show", "showed", "shown"),
    ("order", "ordered", "ordered"), ("pay", "paid", "paid"),
    ("want", "wanted", "wanted"), ("need", "needed", "needed"),
    ("like", "liked", "liked"), ("call", "called", "called"),
    ("visit", "visited", "visited"), ("book", "booked", "booked"),
    ("return", "returned", "returned"), ("charge", "charged", "charged"),
    ("receive", "received", "received"), ("try", "tried", "tried"),
    ("ask", "asked", "asked"), ("love", "loved", "loved"),
    ("recommend", "recommended", "recommended"), ("enjoy", "enjoyed", "enjoyed"),
    ("open", "opened", "opened"), ("help", "helped", "helped"),
    ("buy", "bought", "bought"), ("see", "saw", "seen"), ("get", "got", "gotten"),
    ("take", "took", "taken"), ("make", "made", "made"), ("find", "found", "found"),
    ("give", "gave", "given"), ("send", "sent", "sent"), ("eat", "ate", "eaten"),
    ("cancel", "cancelled", "cancelled"), ("change", "changed", "changed"),
    ("close", "closed", "closed"), ("confirm", "confirmed", "confirmed"),
    ("contact", "contacted", "contacted"), ("deliver", "delivered", "delivered"),
    ("expect", "expected", "expected"), ("fix", "fixed", "fixed"),
    ("lose", "lost", "lost"), ("miss", "missed", "missed"), ("print", "printed", "printed"),
    ("refund", "refunded", "refunded"), ("reserve", "reserved", "reserved"),
    ("select", "selected", "selected"), ("serve", "served", "served"),
    ("split", "split", "split"), ("update", "updated", "updated"),
]
INTRANS = [("go", "went", "gone"), ("come", "came", "come"), ("wait", "waited", "waited"),
           ("arrive", "arrived", "arrived"), ("work", "worked", "worked"),
           ("leave", "left", "left"), ("stay", "stayed", "stayed")]

ADJ = """good great nice bad new old expensive cheap friendly slow quick wrong
correct small large busy clean dirty happy late early cold hot fresh long short
simple rude helpful quiet full empty online local final extra free""".split()
ADJ_CMP = [("better", "Degree=Cmp"), ("worse", "Degree=Cmp"), ("cheaper", "Degree=Cmp"),
           ("best", "Degree=Sup"), ("worst", "Degree=Sup")]
ADV = """very really never always also again quickly finally already still just
only soon today yesterday there here almost""".split()
ADP = "on in at for with from of about after before into".split()
CCONJ = ["and", "but", "or"]
SCONJ = ["when", "because", "if", "after"]
NUM_WORDS = ["two", "three", "four", "five", "ten"]


def third_sg(base):
    if base.endswith(("s", "sh", "ch", "x")):
        return base + "es"
    if base.endswith("y") and base[-2] not in "aeiou":
        return base[:-1] + "ies"
    if base in ("go", "do"):
        return base + "es"
    return base + "s"


def gerund(base):
    if base in ("see",):
        return base + "ing"
    if base.endswith("ie"):
        return base[:-2] + "ying"
    if base.endswith("e") and not base.endswith("ee"):
        return base[:-1] + "ing"
    if base in ("stop", "get", "split", "shop"):
        return base + base[-1] + "ing"
    return base + "ing"


def plural(noun):
    if noun in IRREG_PLURAL:
        return IRREG_PLURAL[noun]
    if noun.endswith(("s", "sh", "ch", "x")):
        return noun + "es"
    if noun.endswith("y") and noun[-2] not in "aeiou":
        return noun[:-1] + "ies"
    return noun + "s"


class Gen:
    def __init__(self, seed):
        self.r = random.Random(seed)

    def zipf(self, items, s=1.1):
        weights = [1.0 / (i + 1) ** s for i in range(len(items))]
        return self.r.choices(items, weights)[0]

    def price(self):
        return f"{self.r.randint(1, 99)}.{self.r.randint(0, 99):02d}"

    def np(self, out, role="obj"):
        r = self.r.random()
        if role == "subj" and r < 0.45:
            out.append((*self.r.choice(PRON_NOM), "PRON"))
            return
        if role == "obj" and r < 0.15:
            out.append((*self.r.choice(PRON_ACC), "PRON"))
            return
        r = self.r.random()
        if r < 0.1:
            out.append((self.zipf(PROPN), "Number=Sing", "PROPN"))
            return
        if r < 0.18:
            if self.r.random() < 0.5:
                out.append((str(self.r.randint(2, 30)), "NumForm=Digit|NumType=Card", "NUM"))
            else:
                out.append((self.r.choice(NUM_WORDS), "NumForm=Word|NumType=Card", "NUM"))
            out.append((plural(self.zipf(NOUNS)), "Number=Plur", "NOUN"))
            return
        plur = self.r.random() < 0.3
        if self.r.random() < 0.3:
            out.append((*self.r.choice(PRON_POSS), "PRON"))
        else:
            out.append((*self.zipf(DET_PL if plur else DET_SG, 1.5), "DET"))
        if self.r.random() < 0.3:
            if self.r.random() < 0.85:
                out.append((self.zipf(ADJ), "Degree=Pos", "ADJ"))
            else:
                out.append((*self.r.choice(ADJ_CMP), "ADJ"))
        noun = self.zipf(NOUNS)
        if plur:
            out.append((plural(noun), "Number=Plur", "NOUN"))
        else:
            out.append((noun, "Number=Sing", "NOUN"))

    def pp(self, out):
        out.append((self.zipf(ADP), "_", "ADP"))
        self.np(out)

    def money(self, out):
        out.append(("$", "_", "SYM"))
        out.append((self.price(), "NumForm=Digit|NumType=Card", "NUM"))

    def obj(self, out):
        if self.r.random() < 0.15:
            self.money(out)
        else:
            self.np(out)
        if self.r.random() < 0.35:
            self.pp(out)

    def vp(self, out):
        r = self.r.random()
        verb = self.zipf(VERBS, 0.9)
        fin_past = "Mood=Ind|Tense=Past|VerbForm=Fin"
        if r < 0.28:
            out.append((verb[1], fin_past, "VERB"))
            self.obj(out)
        elif r < 0.40:
            out.append((third_sg(verb[0]), "Mood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin", "VERB"))
            self.obj(out)
        elif r < 0.50:
            aux = self.r.choice([("have", "Mood=Ind|Tense=Pres|VerbForm=Fin"),
                                 ("has", "Mood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin"),
                                 ("had", "Mood=Ind|Tense=Past|VerbForm=Fin")])
            out.append((*aux, "AUX"))
            if self.r.random() < 0.2:
                out.append(("never", "_", "ADV"))
            out.append((verb[2], "Tense=Past|VerbForm=Part", "VERB"))
            self.obj(out)
        elif r < 0.60:
            out.append((self.r.choice(["will", "can", "could", "would", "should"]), "VerbForm=Fin", "AUX"))
            if self.r.random() < 0.2:
                out.append(("not", "Polarity=Neg", "PART"))
            out.append((verb[0], "VerbForm=Inf", "VERB"))
            self.obj(out)
        elif r < 0.68:
            out.append((*self.r.choice([("was", "Mood=Ind|Number=Sing|Person=3|Tense=Past|VerbForm=Fin"),
                                       ("were", "Mood=Ind|Tense=Past|VerbForm=Fin"),
                                       ("is", "Mood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin"),
                                       ("are", "Mood=Ind|Tense=Pres|VerbForm=Fin")]), "AUX"))
            out.append((gerund(verb[0]), "Tense=Pres|VerbForm=Part", "VERB"))
            self.obj(out)
        elif r < 0.80:
            out.append((*self.r.choice([("was", "Mood=Ind|Number=Sing|Person=3|Tense=Past|VerbForm=Fin"),
                                       ("is", "Mood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin"),
                                       ("were", "Mood=Ind|Tense=Past|VerbForm=Fin")]), "AUX"))
            if self.r.random() < 0.3:
                out.append((self.r.choice(["very", "really", "not"]), "_", "ADV"))
                if out[-1][0] == "not":
                    out[-1] = ("not", "Polarity=Neg", "PART")
            if self.r.random() < 0.3:
                self.money(out)
            elif self.r.random() < 0.3:
                out.append((verb[2], "Tense=Past|VerbForm=Part|Voice=Pass", "VERB"))
                if self.r.random() < 0.5:
                    self.pp(out)
            else:
                out.append((self.zipf(ADJ), "Degree=Pos", "ADJ"))
        elif r < 0.90:
            out.append((verb[1], fin_past, "VERB"))
            out.append(("to", "_", "PART"))
            out.append((self.zipf(VERBS, 0.9)[0], "VerbForm=Inf", "VERB"))
            self.obj(out)
        else:
            iv = self.r.choice(INTRANS)
            out.append((iv[1], fin_past, "VERB"))
            if self.r.random() < 0.6:
                self.pp(out)
        if self.r.random() < 0.15:
            out.append((self.r.choice(ADV), "_", "ADV"))

    def clause(self, out):
        self.np(out, "subj")
        self.vp(out)

    def sentence(self):
        out = []
        if self.r.random() < 0.15:
            out.append((self.r.choice(SCONJ), "_", "SCONJ"))
            self.clause(out)
            out.append((",", "_", "PUNCT"))
        self.clause(out)
        if self.r.random() < 0.3:
            out.append((self.r.choice(CCONJ), "_", "CCONJ"))
            self.clause(out)
        out.append((self.r.choice([".", ".", ".", "!", "?"]), "_", "PUNCT"))
        first = out[0]
        if first[2] != "PROPN" and first[0] != "I":
            out[0] = (first[0][0].upper() + first[0][1:], first[1], first[2])
        return out


def write(path, sentences, prefix):
    with open(path, "w", encoding="utf-8") as f:
        for k, sent in enumerate(sentences, 1):
            f.write(f"# sent_id = {prefix}-{k}\n")
            f.write("# text = " + " ".join(w for w, _, _ in sent) + "\n")
            for i, (form, feats, upos) in enumerate(sent, 1):
                f.write(f"{i}\t{form}\t_\t{upos}\t_\t{feats}\t_\t_\t_\t_\n")
            f.write("\n")


def main():
    g = Gen(SEED)
    train, test = [], []
    while sum(map(len, train)) < 10000:
        train.append(g.sentence())
    while sum(map(len, test)) < 3000:
        test.append(g.sentence())
    write(HERE / "ud_sample_train.conllu", train, "train")
    write(HERE / "ud_sample_test.conllu", test, "test")
    print(len(train), sum(map(len, train)), len(test), sum(map(len, test)))


if __name__ == "__main__":
    main()
