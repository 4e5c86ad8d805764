from .base import BaseEvaluator


class Evaluator(BaseEvaluator):
    """Serial evaluation in the calling thread"""

    def map(self, fn, chunks):
        return [fn(chunk) for chunk in chunks]
