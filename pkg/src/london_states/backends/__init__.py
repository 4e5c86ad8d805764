from importlib import import_module

from london_states.conf import settings


def evaluator(backend_name=None):
    """
    Build an evaluator from the configured backend module.

    :param backend_name: dotted module path, defaults to ``settings.BACKEND``
    :rtype: :class:`london_states.backends.base.BaseEvaluator`
    """
    module = import_module(backend_name or settings.BACKEND)
    return module.Evaluator(workers=settings.WORKERS)
