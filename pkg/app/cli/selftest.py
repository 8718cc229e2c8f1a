"""
Property suite over the bundled corpus and seeded random partial open books
"""
import asyncio
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable, List, Optional, Tuple

import numpy as np

from app.cli.parser import InputDocument, Mode, build_diagram, document_pob, load_document
from app.cli.reports import PropertyResult, SelftestReport
from app.config.settings import get_settings
from app.core.contact.eh import eh_class, eh_is_cycle
from app.core.errors import SFHError
from app.core.floer.differential import CountMode, differential, differential_bruteforce, is_nice
from app.core.floer.domains import is_weakly_admissible
from app.core.openbook.basis import Basis
from app.core.openbook.fuzz import random_pob
from app.core.openbook.heegaard import SuturedHeegaardDiagram, build_heegaard
from app.core.openbook.moves import complexity, parallel_arc, slide_book, stabilize
from app.core.openbook.pob import PartialOpenBook
from app.core.surface.paths import ArcPath, Endpoint

logger = logging.getLogger(__name__)

CORPUS_DIR = Path(__file__).resolve().parents[2] / "corpus"


def corpus_files() -> List[Path]:
    return sorted(CORPUS_DIR.glob("*.pob"))


class _Checker:
    """Collects property verdicts for one instance"""

    def __init__(self, instance: str):
        self.instance = instance
        self.results: List[PropertyResult] = []

    def check(self, name: str, test: Callable[[], Optional[bool]], detail: str = "") -> Optional[bool]:
        try:
            verdict = test()
        except SFHError as e:
            self.results.append(PropertyResult(instance=self.instance, property=name, passed=False, detail=str(e)))
            return False
        except Exception as e:
            logger.exception(f"{self.instance}: {name} crashed")
            self.results.append(PropertyResult(
                instance=self.instance, property=name, passed=False, detail=f"{type(e).__name__}: {e}",
            ))
            return False
        if verdict is None:
            return None
        self.results.append(PropertyResult(
            instance=self.instance, property=name, passed=bool(verdict), detail="" if verdict else detail,
        ))
        return bool(verdict)


def _euler_relation(hd: SuturedHeegaardDiagram) -> bool:
    total = sum(r.chi for r in hd.regions)
    return total == hd.sigma.census().chi + len(hd.crossings)


def _diagram_checks(checker: _Checker, hd: SuturedHeegaardDiagram, from_pob: bool, guard_bound: int) -> None:
    checker.check("euler relation", lambda: _euler_relation(hd))
    try:
        cc = differential(hd, CountMode.AUTO)
    except SFHError as e:
        checker.results.append(PropertyResult(
            instance=checker.instance, property="d squared is zero", passed=False, detail=str(e),
        ))
        return
    checker.check("d squared is zero", lambda: not ((cc.matrix.astype(np.int64) @ cc.matrix.astype(np.int64)) % 2).any())
    if hd.distinguished is not None:
        checker.check("EH is a cycle", lambda: eh_is_cycle(hd, cc))
    if is_nice(hd):
        for bound in sorted({1, guard_bound}):
            checker.check(
                f"nice count agrees with brute force (bound {bound})",
                lambda b=bound: np.array_equal(cc.matrix, differential_bruteforce(hd, b, cc.generators)),
            )
    if from_pob:
        checker.check("weakly admissible", lambda: is_weakly_admissible(hd))


def _invariants(pob: PartialOpenBook, basis: Basis) -> Tuple[int, bool]:
    eh = eh_class(build_heegaard(pob, basis))
    return eh.homology_dimension, eh.nonzero


def _trivial_arc(pob: PartialOpenBook) -> Optional[ArcPath]:
    """Arc across a PLUS polygon between two of its boundary sides"""
    page = pob.page
    for name in pob.plus_polygons():
        sides = [(name, k) for k in range(page.sides(name)) if page.is_boundary((name, k))]
        if len(sides) >= 2:
            return ArcPath("c", Endpoint(sides[0], Fraction(1, 2)), (), Endpoint(sides[1], Fraction(1, 2)))
    return None


def _slide_pair(pob: PartialOpenBook, basis: Basis) -> Optional[Tuple[PartialOpenBook, Basis]]:
    for i in range(basis.r):
        for j in range(basis.r):
            if i == j:
                continue
            try:
                return slide_book(pob, basis, i, j)
            except SFHError as e:
                logger.debug(f"No slide of {basis.arcs[i].name} over {basis.arcs[j].name}: {e}")
    return None


def _move_checks(checker: _Checker, pob: PartialOpenBook, basis: Basis) -> None:
    try:
        before = _invariants(pob, basis)
    except SFHError as e:
        checker.results.append(PropertyResult(
            instance=checker.instance, property="EH of the input", passed=False, detail=str(e),
        ))
        return

    def slide() -> Optional[bool]:
        book, arcs = pob, basis
        if basis.r < 2:
            # a single arc has nothing to slide over until a handle is added beside it
            result = stabilize(pob, parallel_arc(pob, basis, 0), basis)
            book, arcs = result.pob, result.basis
        slid = _slide_pair(book, arcs)
        if slid is None:
            return None
        return _invariants(*slid) == before

    def stabilization() -> Optional[bool]:
        c = _trivial_arc(pob)
        if c is None or complexity(pob, c) != 0:
            return None
        result = stabilize(pob, c, basis)
        return _invariants(result.pob, result.basis) == before

    checker.check("arc slide preserves dim and EH", slide, detail=f"before {before}")
    checker.check("trivial stabilization preserves dim and EH", stabilization, detail=f"before {before}")


def check_document(doc: InputDocument, name: str, guard_bound: int) -> List[PropertyResult]:
    checker = _Checker(name)
    try:
        hd = build_diagram(doc)
    except SFHError as e:
        return [PropertyResult(instance=name, property="build", passed=False, detail=str(e))]
    _diagram_checks(checker, hd, doc.mode == Mode.POB, guard_bound)
    if doc.mode == Mode.POB:
        pob, basis = document_pob(doc)
        _move_checks(checker, pob, basis)
    return checker.results


def check_fuzz(seed: int, guard_bound: int) -> List[PropertyResult]:
    name = f"fuzz-{seed}"
    checker = _Checker(name)
    try:
        pob, basis = random_pob(seed)
        hd = build_heegaard(pob, basis)
    except SFHError as e:
        return [PropertyResult(instance=name, property="build", passed=False, detail=str(e))]
    _diagram_checks(checker, hd, True, guard_bound)
    _move_checks(checker, pob, basis)
    return checker.results


async def _gather(jobs: List[Callable[[], List[PropertyResult]]], workers: int) -> List[List[PropertyResult]]:
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [loop.run_in_executor(pool, job) for job in jobs]
        return await asyncio.gather(*futures)


def run_selftest(seed: int = 0, count: Optional[int] = None, bound: Optional[int] = None) -> SelftestReport:
    """
    Run the property suite

    Args:
        seed: First fuzz seed; instance k uses seed + k
        count: Number of fuzz instances (settings default)
        bound: Second brute-force bound (settings guard bound by default)

    Returns:
        SelftestReport with per-property verdicts in corpus then seed order
    """
    settings = get_settings()
    count = settings.selftest_count if count is None else count
    guard = settings.guard_bound if bound is None else bound

    jobs: List[Callable[[], List[PropertyResult]]] = []
    instances: List[str] = []
    for path in corpus_files():
        doc = load_document(str(path))
        instances.append(path.stem)
        jobs.append(lambda d=doc, n=path.stem: check_document(d, n, guard))
    for k in range(count):
        instances.append(f"fuzz-{seed + k}")
        jobs.append(lambda s=seed + k: check_fuzz(s, guard))

    logger.info(f"Selftest: {len(jobs)} instances on {settings.max_workers} workers")
    batches = asyncio.run(_gather(jobs, settings.max_workers))
    results = [r for batch in batches for r in batch]
    failures = sum(1 for r in results if not r.passed)
    if failures:
        logger.error(f"Selftest: {failures} of {len(results)} checks failed")
    return SelftestReport(
        command="selftest",
        seed=seed,
        count=count,
        instances=instances,
        results=results,
        failures=failures,
    )
