from concurrent.futures import ThreadPoolExecutor

from .base import BaseEvaluator


class Evaluator(BaseEvaluator):
    """
    Thread pool evaluation.

    ``executor.map`` yields results in submission order.
    """

    def map(self, fn, chunks):
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            return list(executor.map(fn, chunks))
