import logging
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from functools import wraps

log = logging.getLogger(__name__)

_lock = threading.Lock()
_threads = None


def set_threads(count):
    """
    Set the number of worker threads used by the concurrent sweeps

    :param count: number of threads, None resets to the hardware count
    :type count: int
    """
    global _threads
    if count is not None and count < 1:
        raise ValueError("thread count must be positive, got " + str(count))
    with _lock:
        _threads = count


def get_threads():
    with _lock:
        if _threads is None:
            return os.cpu_count() or 1
        return _threads


def parallel_map(fn, items, threads=None):
    """
    Apply fn to every item on a thread pool

    Results come back in input order, so callers assemble them the same way
    whatever the thread count and completion order.

    :param fn: callable taking one item
    :param items: iterable of inputs
    :param threads: worker count (optional, default: value of set_threads or cpu count)
    :return: list of results
    :rtype: list
    """
    items = list(items)
    if threads is None:
        threads = get_threads()
    if threads <= 1 or len(items) <= 1:
        return [fn(each) for each in items]
    log.debug("Running " + str(len(items)) + " tasks on " + str(threads) + " threads")
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(fn, items))


def log_exception(logger):
    # A decorator that wraps the passed in function and logs
    # exceptions should one occur

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except Exception:
                err = "There was an exception in  "
                err += func.__name__
                logger.exception(err)
                raise

        return wrapper

    return decorator
