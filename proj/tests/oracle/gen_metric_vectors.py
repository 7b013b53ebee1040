#!/usr/bin/env python3
"""Generate reference metric values with sacrebleu for the C++ differential tests.

    python3 tests/oracle/gen_metric_vectors.py > tests/data/metric_vectors.json

The output is committed; re-run only when the generator changes.
"""
import json
import random
import sys

import sacrebleu
from sacrebleu.metrics import BLEU, CHRF
from sacrebleu.tokenizers.tokenizer_13a import Tokenizer13a

SEED = 20250
N_PAIRS = 500
N_TOKENIZE = 200

EN_WORDS = (
    "the of and to in is was for on that with as by at from it his an were are which this be has had "
    "not or have one their new first after who two its been also they other more time year system "
    "translation model data Arabic English language benchmark corpus sentence quality evaluation "
    "doctor hospital patient science research culture museum heritage computer network server "
    "don't it's we'll O'Brien state-of-the-art well-known U.S. e.g. i.e. Dr. Mr. COVID-19 GPT-4"
).split()
AR_WORDS = (
    "في من على إلى أن التي الذي عن مع هذا هذه كان قد لا ما بين كل بعد عند حتى ثم أو لكن "
    "الترجمة النموذج البيانات العربية الإنجليزية اللغة المعيار الجملة الجودة التقييم الطبيب "
    "المستشفى المريض العلم البحث الثقافة المتحف التراث الحاسوب الشبكة الخادم والكتاب بالعربية "
    "للغة فالنموذج كتب يكتب مكتوب مدرسة مدارس جامعة الجامعات"
).split()
NUMBERS = ["3", "42", "1,000", "3.14", "2025", "٢٠٢٥", "١٢٣", "10%", "$5", "7.5", "1-2", "12:30", "0.001"]
PUNCT = [",", ".", "!", "?", ";", ":", "،", "؟", "؛", "(", ")", '"', "'", "-", "--", "...", "/", "&", "&amp;",
         "&quot;", "&lt;", "&gt;", "[", "]", "{", "}", "«", "»", "—", "–", "@", "#", "*", "+", "=", "<", ">",
         "$", "%", "^", "_", "`", "~", "|", "\\"]


def word(rng, script):
    r = rng.random()
    if r < 0.08:
        return rng.choice(NUMBERS)
    if r < 0.12:
        return rng.choice(PUNCT)
    base = rng.choice(EN_WORDS if script == "en" else AR_WORDS)
    r = rng.random()
    if r < 0.15:
        return base + rng.choice([",", ".", "!", "?", ";", ":", "،", "؟", ")", '"', "'s", "-"])
    if r < 0.2:
        return rng.choice(["(", '"', "'", "«", "-"]) + base
    if r < 0.23 and script == "en":
        return base.capitalize() if rng.random() < 0.5 else base.upper()
    return base


def sentence(rng, n, script):
    words = []
    for _ in range(n):
        s = script
        if script == "mixed":
            s = "en" if rng.random() < 0.5 else "ar"
        elif rng.random() < 0.05:
            s = "ar" if script == "en" else "en"
        words.append(word(rng, s))
    # Occasional irregular spacing: tabs, double spaces, no-break space.
    out = words[0]
    for w in words[1:]:
        r = rng.random()
        sep = " "
        if r < 0.03:
            sep = "  "
        elif r < 0.05:
            sep = "\t"
        elif r < 0.06:
            sep = " "
        out += sep + w
    if rng.random() < 0.05:
        out = " " + out + " "
    return out


def perturb(rng, ref_words, script, level):
    out = []
    for w in ref_words:
        r = rng.random()
        if r < level * 0.3:
            continue  # drop
        if r < level * 0.6:
            out.append(word(rng, script))  # substitute
            continue
        out.append(w)
        if rng.random() < level * 0.2:
            out.append(word(rng, script))  # insert
    if len(out) > 3 and rng.random() < level:
        i = rng.randrange(len(out) - 1)
        out[i], out[i + 1] = out[i + 1], out[i]
    if not out:
        out = [word(rng, script)]
    return out


def make_pairs(rng):
    hyps, refs = [], []
    for i in range(N_PAIRS):
        script = ["en", "ar", "mixed"][i % 3]
        n = rng.choice([1, 1, 2, 3, 4, 5]) if i % 10 == 0 else rng.randint(1, 120)
        ref = sentence(rng, n, script)
        kind = rng.random()
        if kind < 0.05:
            hyp = ref  # exact copy
        elif kind < 0.1:
            hyp = sentence(rng, rng.randint(1, 120), script)  # unrelated
        else:
            level = rng.choice([0.05, 0.15, 0.3, 0.5, 0.8])
            hyp_words = perturb(rng, ref.split(), "en" if script == "en" else "ar", level)
            n_hyp = min(len(hyp_words), 120)
            hyp = " ".join(hyp_words[:n_hyp])
        hyps.append(hyp)
        refs.append(ref)
    return hyps, refs


def bleu_dict(b):
    return {
        "score": b.score,
        "precisions": b.precisions,
        "bp": b.bp,
        "sys_len": b.sys_len,
        "ref_len": b.ref_len,
        "counts": b.counts,
        "totals": b.totals,
    }


def main():
    rng = random.Random(SEED)
    hyps, refs = make_pairs(rng)

    bleu = BLEU()
    bleu_lc = BLEU(lowercase=True)
    bleu_none = BLEU(smooth_method="none")
    chrf = CHRF(word_order=2)
    chrf_lc = CHRF(word_order=2, lowercase=True)

    corpora = []

    def add(name, idx):
        h = [hyps[i] for i in idx]
        r = [refs[i] for i in idx]
        corpora.append({
            "name": name,
            "indices": idx,
            "bleu": bleu_dict(bleu.corpus_score(h, [r])),
            "bleu_lowercase": bleu_dict(bleu_lc.corpus_score(h, [r])),
            "bleu_no_smoothing": bleu_dict(bleu_none.corpus_score(h, [r])),
            "chrf_pp": chrf.corpus_score(h, [r]).score,
            "chrf_pp_lowercase": chrf_lc.corpus_score(h, [r]).score,
        })

    add("full", list(range(N_PAIRS)))
    for k in range(20):
        size = rng.choice([2, 5, 10, 50, 100])
        add(f"subset{k}", sorted(rng.sample(range(N_PAIRS), size)))
    for i in range(100):
        add(f"segment{i}", [i])

    tok = Tokenizer13a()
    strings = [sentence(rng, rng.randint(1, 30), ["en", "ar", "mixed"][i % 3]) for i in range(N_TOKENIZE - 12)]
    strings += [
        "a-b", "3-4", "x3-y", "Mr.Smith,Jones.", "1.5,2,3.", "a.b,c", "&quot;hi&quot; &amp; &lt;b&gt;",
        "line-\nbreak", "<skipped> text", "tab\there", "　ideographic space", "\u0085next line",
    ]
    tokenize = [{"text": s, "tokens": tok(s).split()} for s in strings]

    json.dump({
        "generator": {"seed": SEED, "sacrebleu": sacrebleu.__version__},
        "hyps": hyps,
        "refs": refs,
        "corpora": corpora,
        "tokenize": tokenize,
    }, sys.stdout, ensure_ascii=False, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
