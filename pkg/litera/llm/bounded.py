from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar, Union

from litera.common.errors import InputError

T = TypeVar("T")


def run_bounded(tasks: Sequence[Callable[[], T]], max_in_flight: int) -> List[Union[T, Exception]]:
    """
    Runs tasks on a thread pool with at most max_in_flight running at once.

    :param tasks: zero-argument callables
    :param max_in_flight: the concurrency limit, at least 1
    :return: each task's result, or the exception it raised, in task order
    """
    if max_in_flight < 1:
        raise InputError(f"max_in_flight must be at least 1, got {max_in_flight}")
    if not tasks:
        return []

    with ThreadPoolExecutor(max_workers=min(max_in_flight, len(tasks))) as executor:
        futures = [executor.submit(task) for task in tasks]

    results: List[Union[T, Exception]] = []
    for future in futures:
        error = future.exception()
        results.append(error if error is not None else future.result())
    return results
