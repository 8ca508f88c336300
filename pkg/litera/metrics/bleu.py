import math
from typing import List, Sequence

from litera.common.errors import InputError
from litera.metrics.bleu_score import MAX_ORDER, BleuScore
from litera.metrics.tokenizer import tokenize_13a


def __brevity_penalty(sys_len: int, ref_len: int) -> float:
    if sys_len >= ref_len:
        return 1.0
    if sys_len == 0:
        return 0.0
    return math.exp(1 - ref_len / sys_len)


def compute_bleu(counts: Sequence[int], totals: Sequence[int], sys_len: int, ref_len: int) -> BleuScore:
    """
    Turns accumulated n-gram statistics into a score with exponential smoothing: every order without
    a match doubles a factor f and gets the precision 1 / (f * total).

    :param counts: clipped matches per order
    :param totals: hypothesis n-grams per order
    :param sys_len: hypothesis tokens
    :param ref_len: reference tokens
    """
    brevity_penalty = __brevity_penalty(sys_len, ref_len)
    precisions = [0.0] * MAX_ORDER

    if not any(counts):
        return BleuScore(0.0, tuple(precisions), brevity_penalty, sys_len, ref_len, tuple(counts), tuple(totals))

    smoothing = 1.0
    for n in range(MAX_ORDER):
        if totals[n] == 0:
            break
        if counts[n] == 0:
            smoothing *= 2
            precisions[n] = 1.0 / (smoothing * totals[n])
        else:
            precisions[n] = counts[n] / totals[n]

    if min(precisions) <= 0.0:
        score = 0.0
    else:
        score = 100.0 * brevity_penalty * math.exp(sum(math.log(p) for p in precisions) / MAX_ORDER)

    return BleuScore(score, tuple(precisions), brevity_penalty, sys_len, ref_len, tuple(counts), tuple(totals))


def bleu_corpus(hypotheses: Sequence[str], references: Sequence[str]) -> BleuScore:
    """
    Computes case-sensitive corpus BLEU with 13a tokenization against a single reference per segment.

    :param hypotheses: one system output per segment
    :param references: one reference per segment
    :return: the corpus score
    :raises InputError: if the lists are empty or differ in length
    """
    if len(hypotheses) != len(references):
        raise InputError(f"got {len(hypotheses)} hypotheses for {len(references)} references")
    if not hypotheses:
        raise InputError("cannot score an empty corpus")

    counts = [0] * MAX_ORDER
    totals = [0] * MAX_ORDER
    sys_len = ref_len = 0

    for hypothesis, reference in zip(hypotheses, references):
        hypothesis_tokens = tokenize_13a(hypothesis.rstrip())
        reference_tokens = tokenize_13a(reference.rstrip())
        sys_len += len(hypothesis_tokens)
        ref_len += len(reference_tokens)

        for n in range(1, MAX_ORDER + 1):
            hypothesis_ngrams = hypothesis_tokens.ngrams(n)
            reference_ngrams = reference_tokens.ngrams(n)
            counts[n - 1] += sum(min(count, reference_ngrams[ngram]) for ngram, count in hypothesis_ngrams.items())
            totals[n - 1] += max(0, len(hypothesis_tokens) - n + 1)

    return compute_bleu(counts, totals, sys_len, ref_len)


def bleu_segments(hypotheses: Sequence[str], references: Sequence[str]) -> List[BleuScore]:
    """
    Scores every pair on its own, each as a one-segment corpus.
    """
    if len(hypotheses) != len(references):
        raise InputError(f"got {len(hypotheses)} hypotheses for {len(references)} references")
    return [bleu_corpus([hypothesis], [reference]) for hypothesis, reference in zip(hypotheses, references)]
