# -*- coding: utf-8 -*-
"""
Execution of independent randomized trials.
===================================================
A TrialRunner instanciation requires:
    - parallel: bool, dispatch trials through joblib when True,
    - n_jobs: number of joblib workers,
    - progress: bool, wrap the sequential loop in a tqdm progress bar,
    - name: label shown by the progress bar.
Each trial is a function of a RandomSource; the runner hands trial i the
i-th child of `rng.spawn(count)`, so that the parallel and sequential modes
compute exactly the same values.
"""
from joblib import Parallel, delayed
from tqdm import tqdm


class TrialRunner(object):
    """ Runs `func(index, rng)` over independent random streams.
    """

    def __init__(self, parallel=False, n_jobs=1, progress=False, name=''):
        self.parallel = parallel
        self.n_jobs = n_jobs
        self.progress = progress
        self.name = name

    @classmethod
    def from_parameters(cls, parameters, name=''):
        return cls(parallel=parameters.get('parallel', False), n_jobs=parameters.get('n_jobs', 1),
                   progress=parameters.get('progress', False), name=name)

    def _iterate(self, items):
        if self.progress:
            return tqdm(items, desc=self.name or None)
        return items

    def map(self, func, rng, count):
        """Results of all trials, in trial order.
        Arguments:
            - func: callable(index, rng)
            - rng: RandomSource (advanced by one draw)
            - count: int
        Returns:
            - list
        """
        streams = rng.spawn(count)
        if self.parallel and count > 1:
            return Parallel(n_jobs=self.n_jobs, verbose=0, max_nbytes=None)(
                delayed(func)(index, stream) for index, stream in enumerate(streams))
        return [func(index, stream) for index, stream in self._iterate(list(enumerate(streams)))]

    def first(self, func, rng, count, decisive=bool):
        """Lowest-index trial result that is decisive, or None.
        Sequential runs stop at that trial; parallel runs compute every
        trial and then pick it, so both modes agree.
        Returns:
            - (index, result) or (None, None)
        """
        streams = rng.spawn(count)
        if self.parallel and count > 1:
            results = Parallel(n_jobs=self.n_jobs, verbose=0, max_nbytes=None)(
                delayed(func)(index, stream) for index, stream in enumerate(streams))
            for index, result in enumerate(results):
                if decisive(result):
                    return index, result
            return None, None
        for index, stream in self._iterate(list(enumerate(streams))):
            result = func(index, stream)
            if decisive(result):
                return index, result
        return None, None


SEQUENTIAL = TrialRunner()
