import logging
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from segre_index.fields import RATIONALS, FieldDescriptor
from segre_index.reports import Field, Report, Summary, Table

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VerifyParams:
    """
    Parameters shared by all verification modes.

    Args:
        n (int): Size parameter of the instances.
        trials (int): Number of random trials.
        seed (int): Base seed; trial i uses ``seed ^ i``.
        field (FieldDescriptor): Q or F_p.
        coeff_bound (int): Coefficients are drawn from [-bound, bound].
        a (tuple, optional): Explicit values for the symmetric family.
        max_threads (int): Worker threads for independent trials.
    """

    n: int = 3
    trials: int = 10
    seed: int = 0
    field: FieldDescriptor = RATIONALS
    coeff_bound: int = 5
    a: Optional[tuple] = None
    max_threads: int = 1


@dataclass(frozen=True)
class TrialResult:
    index: int
    seed: int
    passed: bool
    detail: str = ""


class BaseVerifier(ABC):
    """
    A randomized or closed-form check of one identity.

    Subclasses implement ``check_params`` and ``run_trial``; ``run`` fans the
    trials out over a thread pool and assembles the report in trial order.
    """

    name: str = "verify"
    unit: str = "trial"

    @abstractmethod
    def check_params(self, params: VerifyParams) -> None:
        """
        Validate mode-specific parameters.

        Raises:
            SchemaError: If a parameter is out of range.
        """
        pass

    @abstractmethod
    def run_trial(self, index: int, seed: int, params: VerifyParams) -> TrialResult:
        """
        Run one independent trial.

        Args:
            index (int): Position of the trial in the report.
            seed (int): Seed derived for this trial.
            params (VerifyParams): Shared parameters.

        Returns:
            TrialResult: The verdict plus a short detail string.
        """
        pass

    def trial_count(self, params: VerifyParams) -> int:
        return params.trials

    def trial_seed(self, index: int, params: VerifyParams) -> int:
        return params.seed ^ index

    def results(self, params: VerifyParams) -> list[TrialResult]:
        with ThreadPoolExecutor(max_workers=params.max_threads) as executor:
            return list(
                executor.map(
                    lambda index: self.run_trial(
                        index, self.trial_seed(index, params), params
                    ),
                    range(self.trial_count(params)),
                )
            )

    def run(self, params: VerifyParams) -> Report:
        self.check_params(params)
        results = self.results(params)
        for result in results:
            logger.debug(
                "%s %s %d (seed %d): %s %s",
                self.name,
                self.unit,
                result.index,
                result.seed,
                "pass" if result.passed else "FAIL",
                result.detail,
            )
        passed = sum(1 for r in results if r.passed)
        logger.info("%s: %d/%d passed", self.name, passed, len(results))

        table = Table(f"{self.unit}s", [self.unit, "seed", "passed", "detail"])
        for r in results:
            table.add_row(r.index, r.seed, r.passed, r.detail)
        return Report(
            "verify",
            [
                Field("mode", self.name),
                Field("n", params.n),
                Field("field", params.field),
                Field("seed", params.seed),
                table,
                Summary(f"{passed}/{len(results)} passed", passed == len(results)),
            ],
        )
