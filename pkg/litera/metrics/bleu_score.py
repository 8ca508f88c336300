from dataclasses import dataclass
from typing import Tuple

MAX_ORDER = 4


@dataclass(frozen=True)
class BleuScore:
    """
    A BLEU score and its decomposition.

    :param score: the score in [0, 100]
    :param precisions: the smoothed n-gram precisions p1 to p4 as fractions
    :param brevity_penalty: the brevity penalty, 0 only when the hypotheses are empty
    :param sys_len: the number of hypothesis tokens
    :param ref_len: the number of reference tokens
    :param counts: the clipped n-gram matches per order
    :param totals: the hypothesis n-grams per order
    """

    score: float
    precisions: Tuple[float, ...]
    brevity_penalty: float
    sys_len: int
    ref_len: int
    counts: Tuple[int, ...] = (0,) * MAX_ORDER
    totals: Tuple[int, ...] = (0,) * MAX_ORDER

    @property
    def ratio(self) -> float:
        return self.sys_len / self.ref_len if self.ref_len else 0.0

    def format(self, width: int = 2) -> str:
        """
        Renders the score on one line, precisions as percentages.
        """
        precisions = "/".join(f"{100 * precision:.1f}" for precision in self.precisions)
        return (
            f"BLEU = {self.score:.{width}f} {precisions} "
            f"(BP = {self.brevity_penalty:.3f} ratio = {self.ratio:.3f} "
            f"hyp_len = {self.sys_len:d} ref_len = {self.ref_len:d})"
        )

    def __str__(self):
        return self.format()

    def to_dict(self) -> dict:
        return {
            "score": self.score,
            "precisions": list(self.precisions),
            "brevity_penalty": self.brevity_penalty,
            "sys_len": self.sys_len,
            "ref_len": self.ref_len,
            "counts": list(self.counts),
            "totals": list(self.totals),
        }
