class BaseEvaluator(object):
    """
    Interface for filling sampled grids and traces.

    Chunks are independent pure evaluations, so a backend is free to run them
    in any order but must return the results in chunk order.
    """

    def __init__(self, workers=None):
        self.workers = workers

    def map(self, fn, chunks):
        """
        Apply ``fn`` to every chunk.

        :param fn: callable taking one chunk
        :param chunks: iterable of chunks
        :rtype: list
        :return: the results in the order of ``chunks``
        """
        raise NotImplementedError()

    def __repr__(self):
        return '<%s workers=%s>' % (self.__class__.__name__, self.workers)
