"""
Batch Verification for Wreath Macdonald Operators
Check M^(i) P_gamma = e^(i) P_gamma over whole fibers, in parallel, and write reports
"""

import concurrent.futures
import json
import logging
from dataclasses import asdict, dataclass
from datetime import datetime
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from eigen import DEFAULT_EVALUATION, EvaluationConfig, operator_matrix
from linalg import mat_vec
from operators import OperatorKind, apply_M, eigenvalue
from partitions import DimVector, Partition, PartitionError, fiber, is_compatible, is_core, kappa_cl, minimal_compatible
from polynomials import expand_in_basis
from scalars import format_scalar
from wreath_macdonald import compute_P_finite, fiber_of

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class VerificationReport:
    """One (lambda, i) check; failures carry a witness instead of raising"""
    r: int
    gamma: str
    core: str
    lam: str
    N: str
    n: int
    i: int
    status: str
    eigenvalue: str = ""
    witness: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json_dict(self) -> Dict:
        data = asdict(self)
        data["lambda"] = data.pop("lam")
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _screen_by_matrix(P, i: int, e, N: DimVector, degree: int, config: EvaluationConfig) -> bool:
    """Cheap check through the evaluated operator matrix; never the verdict"""
    coordinates = expand_in_basis(P, degree)
    image = mat_vec(operator_matrix(i, N, degree, OperatorKind.WREATH, "evaluate", True, config).entries,
                    coordinates)
    return all(a == e * b for a, b in zip(image, coordinates))


def verify_case(lam: Partition, r: int, N: DimVector, vertices: Optional[Sequence[int]] = None,
                method: str = "symbolic", config: EvaluationConfig = DEFAULT_EVALUATION) -> List[VerificationReport]:
    """Check the eigen-equation for one lambda at each vertex

    The verdict is always the exact residual M^(i) P - e^(i) P from apply_M.
    method "matrix" first screens through the evaluated operator matrix and
    logs when the screen and the exact residual disagree.
    """
    if method not in ("symbolic", "matrix"):
        raise ValueError(f"unknown verification method {method!r}")
    info = fiber_of(lam, r)
    gamma = str(kappa_cl(info.core, r))
    vertices = list(range(r)) if vertices is None else list(vertices)

    def report(i: int, status: str, value: str = "", witness: str = "") -> VerificationReport:
        return VerificationReport(r, gamma, str(info.core), str(lam), str(N), info.n, i, status, value, witness)

    try:
        P = compute_P_finite(lam, r, N)
        values = {i: eigenvalue(lam, i, N) for i in vertices}
    except Exception as e:
        logger.error(f"Could not build P for ({lam}), N=({N}): {str(e)}")
        return [report(i, FAIL, witness=f"{type(e).__name__}: {str(e)}") for i in vertices]

    reports = []
    for i in vertices:
        e = values[i]
        try:
            screened = _screen_by_matrix(P, i, e, N, info.n, config) if method == "matrix" else None
            residual = apply_M(i, N, P) - P.scale(e)
        except Exception as exc:
            logger.error(f"Check failed to run for ({lam}), i={i}: {str(exc)}")
            reports.append(report(i, FAIL, format_scalar(e), f"{type(exc).__name__}: {str(exc)}"))
            continue
        if screened is not None and screened != residual.is_zero():
            logger.warning(f"Matrix screen and exact residual disagree for ({lam}), i={i}")
        if residual.is_zero():
            reports.append(report(i, PASS, format_scalar(e)))
        else:
            logger.warning(f"M^({i}) P - e P != 0 for ({lam}), N=({N})")
            reports.append(report(i, FAIL, format_scalar(e), str(residual)))
    return reports


def _verify_task(parts: Tuple[int, ...], r: int, entries: Tuple[int, ...], method: str,
                 config: EvaluationConfig) -> List[VerificationReport]:
    """Picklable worker entry point"""
    return verify_case(Partition(parts), r, DimVector(entries), None, method, config)


@dataclass(frozen=True)
class VerificationCase:
    lam: Partition
    r: int
    N: DimVector

    def sort_key(self) -> Tuple:
        return (self.lam.size, tuple(-p for p in self.lam.parts))

    def failure(self, witness: str) -> List[VerificationReport]:
        info = fiber_of(self.lam, self.r)
        gamma = str(kappa_cl(info.core, self.r))
        return [VerificationReport(self.r, gamma, str(info.core), str(self.lam), str(self.N), info.n, i, FAIL,
                                   witness=witness)
                for i in range(self.r)]


def plan_cases(r: int, core: Partition, max_boxes: int, N: Optional[DimVector] = None,
               N_floor: Optional[int] = None) -> List[VerificationCase]:
    """Every lambda with the given core and at most max_boxes quotient boxes

    With no explicit N, each n uses the minimal compatible vector with floor
    N_floor, or floor n when N_floor is None.
    """
    if not is_core(core, r):
        raise PartitionError(f"({core}) is not an {r}-core")
    gamma = kappa_cl(core, r)
    if N is not None and not is_compatible(N, gamma, r):
        raise PartitionError(f"N=({N}) is not compatible with gamma={gamma}")
    cases = []
    for n in range(max_boxes + 1):
        dims = N if N is not None else minimal_compatible(gamma, r, n if N_floor is None else N_floor)
        if any(dims[i] < n for i in range(r)):
            logger.warning(f"Skipping n={n}: N=({dims}) has an entry below {n}")
            continue
        cases.extend(VerificationCase(lam, r, dims) for lam in fiber(core, r, n))
    return cases


class BatchVerifier:
    """Run verification cases inline or across worker processes"""

    def __init__(self, max_workers: int = 1, method: str = "symbolic",
                 config: EvaluationConfig = DEFAULT_EVALUATION):
        self.max_workers = max(1, int(max_workers))
        self.method = method
        self.config = config

    def process_batch(self, cases: Sequence[VerificationCase]) -> Dict:
        results = {
            'successful': [],
            'failed': [],
            'total': len(cases),
            'start_time': datetime.now()
        }
        collected: Dict[VerificationCase, List[VerificationReport]] = {}

        if self.max_workers == 1:
            for case in cases:
                collected[case] = verify_case(case.lam, case.r, case.N, None, self.method, self.config)
        else:
            with concurrent.futures.ProcessPoolExecutor(max_workers=self.max_workers) as executor:
                future_to_case = {
                    executor.submit(_verify_task, case.lam.parts, case.r, case.N.entries,
                                    self.method, self.config): case
                    for case in cases
                }
                for future in concurrent.futures.as_completed(future_to_case):
                    case = future_to_case[future]
                    try:
                        collected[case] = future.result()
                    except Exception as e:
                        logger.error(f"Worker failed on ({case.lam}): {str(e)}")
                        collected[case] = case.failure(f"{type(e).__name__}: {str(e)}")

        # merge in a fixed order, independent of completion order
        reports: List[VerificationReport] = []
        for case in sorted(cases, key=VerificationCase.sort_key):
            for report in sorted(collected[case], key=lambda item: item.i):
                reports.append(report)
                bucket = 'successful' if report.passed else 'failed'
                results[bucket].append(report)

        results['reports'] = reports
        results['end_time'] = datetime.now()
        results['duration'] = (results['end_time'] - results['start_time']).total_seconds()
        logger.info(f"Verified {len(cases)} partitions: {len(results['successful'])} checks passed, "
                    f"{len(results['failed'])} failed in {results['duration']:.2f}s")
        return results


def verify_theorem(r: int, core: Partition, max_boxes: int, N_floor: Optional[int] = None,
                   N: Optional[DimVector] = None, jobs: int = 1, method: str = "symbolic",
                   config: EvaluationConfig = DEFAULT_EVALUATION) -> List[VerificationReport]:
    """Reports for every lambda with r-core `core`, n <= max_boxes, and every vertex"""
    cases = plan_cases(r, core, max_boxes, N, N_floor)
    return BatchVerifier(jobs, method, config).process_batch(cases)['reports']


def summarize(reports: Iterable[VerificationReport]) -> Dict:
    reports = list(reports)
    failed = [report for report in reports if not report.passed]
    return {
        "summary": True,
        "checks": len(reports),
        "passed": len(reports) - len(failed),
        "failed": len(failed),
        "status": PASS if not failed else FAIL,
    }


def write_reports(reports: Sequence[VerificationReport], path: Optional[str] = None) -> str:
    """JSON lines, one per report, followed by a summary line"""
    if not path:
        path = f"verify_report_{datetime.now().strftime('%Y%m%d_%H%M%S')}.jsonl"
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        for report in reports:
            f.write(report.to_json() + "\n")
        f.write(json.dumps(summarize(reports), sort_keys=True) + "\n")
    logger.info(f"Report saved to: {path}")
    return path


def load_grid(path: str) -> List[Dict]:
    """Acceptance grid entries: r, core, max_boxes and either N or N_floor"""
    with open(path, 'r', encoding='utf-8') as f:
        data = json.load(f)
    entries = data.get("grid", data) if isinstance(data, dict) else data
    if not isinstance(entries, list):
        raise ValueError(f"{path}: expected a list of grid entries")
    return entries


def run_grid(entries: Sequence[Dict], jobs: int = 1, method: str = "symbolic",
             config: EvaluationConfig = DEFAULT_EVALUATION) -> List[VerificationReport]:
    from utils import parse_partition

    reports = []
    for entry in entries:
        r = int(entry["r"])
        core = parse_partition(str(entry.get("core", "")))
        N = DimVector(tuple(entry["N"])) if entry.get("N") is not None else None
        floor = entry.get("N_floor")
        logger.info(f"Grid entry r={r}, core=({core}), n <= {entry['max_boxes']}")
        reports.extend(verify_theorem(r, core, int(entry["max_boxes"]), floor, N, jobs, method, config))
    return reports
