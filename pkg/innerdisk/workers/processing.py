#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
InnerDisk - Пакетный исполнитель независимых вычислений

Задачи (коэффициенты нескольких функций, куски сетки theta, зонды в разных
точках окружности) выполняются в пуле потоков; numpy отпускает GIL в
тяжёлых операциях. Результаты всегда возвращаются в порядке постановки
задач, поэтому суммирование по ним детерминировано.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, List, Optional, Sequence, Tuple

from ..core.constants import LOGGER_NAME

try:
    import psutil
except ImportError:  # pragma: no cover - psutil нужен только для числа потоков
    psutil = None

logger = logging.getLogger(LOGGER_NAME)

Job = Tuple[str, Callable[[], Any]]
ProgressCallback = Callable[[int, int, str], None]

# маркер задачи, пропущенной после stop()
_SKIPPED = object()


def default_worker_count() -> int:
    """Число физических ядер, либо 1"""
    if psutil is not None:
        try:
            count = psutil.cpu_count(logical=False)
        except Exception as e:
            logger.debug(f"psutil.cpu_count недоступен: {e}")
            count = None
        if count:
            return int(count)
    return 1


class BatchWorker:
    """Выполняет список (метка, функция) и возвращает результаты по порядку"""

    def __init__(self, jobs: Sequence[Job], max_workers: Optional[int] = None,
                 progress_callback: Optional[ProgressCallback] = None):
        self.jobs = list(jobs)
        self.max_workers = max_workers if max_workers and max_workers > 0 else default_worker_count()
        self.progress_callback = progress_callback
        self._stop = False

    def stop(self):
        """Задачи, ещё не начавшиеся, будут пропущены"""
        self._stop = True

    def _guarded(self, job: Callable[[], Any]) -> Any:
        if self._stop:
            return _SKIPPED
        return job()

    def run(self) -> List[Any]:
        """
        Результаты в порядке задач. После stop() возвращается только начальный
        отрезок выполненных задач, как и в последовательном режиме.
        """
        total = len(self.jobs)
        if total == 0:
            return []

        if self.max_workers == 1 or total == 1:
            results = []
            for i, (label, job) in enumerate(self.jobs):
                if self._stop:
                    break
                results.append(job())
                self._report(i + 1, total, label)
            return results

        logger.debug("BatchWorker: %d задач, %d потоков", total, self.max_workers)
        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            futures = [pool.submit(self._guarded, job) for _, job in self.jobs]
            results = []
            for i, ((label, _), future) in enumerate(zip(self.jobs, futures)):
                # исключение из задачи пробрасывается вызывающему как есть
                results.append(future.result())
                self._report(i + 1, total, label)
        skipped = next((i for i, r in enumerate(results) if r is _SKIPPED), None)
        if skipped is not None:
            results = results[:skipped]
        return results

    def _report(self, done: int, total: int, label: str):
        if self.progress_callback:
            self.progress_callback(done, total, label)
