"""
Exhaustive surveys of circulant and abelian Cayley graphs: enumeration of
connection sets, the classification pipeline for one graph, aggregation
with consistency monitors, and JSON-lines persistence.
"""

import os
import sys
import json
import math
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from contextlib import ExitStack
from dataclasses import dataclass, field, asdict
from typing import Optional

from astropy import log
from astropy.table import Table
from astropy.utils.console import ProgressBar

if __package__ == '':
    __package__ = 'circstab'
from . import conf
from .abelian import AbelianGroup, make_cyclic, abelian_groups, automorphisms
from .autgroup import is_arc_transitive, is_edge_transitive, is_normal_cayley
from .compat import compatible_cayley_search
from .graph import cayley_graph
from .stability import classify, compatible_from_tf
from .utils import (CircstabError, CircstabWarning, ParameterError,
                    SurveyIOError, check_size)
from .wilson import check_all

SURVEY_FORMAT = 'circstab-survey'
SURVEY_VERSION = 1
CONDITIONS = ('c1', 'c2', 'c2prime', 'c3', 'c4')


def _connection_sets(G):
    orbits = G.inverse_orbits()
    for mask in range(1, 1 << len(orbits)):
        yield sorted(x for i, orbit in enumerate(orbits) if mask >> i & 1
                     for x in orbit)


def enumerate_connection_sets(n):
    """
    Every nonempty inverse-closed subset of Z_n minus 0, built from the
    negation orbits {s, -s}. There are 2^ceil((n-1)/2) - 1 of them.

    Raises
    ------
    ParameterError
        If ``n`` is less than 2.
    """
    if n < 2:
        raise ParameterError("Circulants need n >= 2, got {}".format(n))
    return _connection_sets(make_cyclic(n))


def enumerate_abelian_cayley(order):
    """
    Yield (group, connection set) for every abelian group of the given
    order and every nonempty inverse-closed connection set of it. Elements
    are residues for cyclic groups and coordinate tuples otherwise.

    Raises
    ------
    SizeLimitError
        If ``order`` exceeds ``conf.abelian_stream_max_order``.
    """
    check_size(order, conf.abelian_stream_max_order, 'abelian stream order')
    for G in abelian_groups(order):
        if G.order < 2:
            continue
        for S in _connection_sets(G):
            yield G, G.as_elements(S)


def survey_groups(min_n, max_n, odd_only=False, abelian=False):
    """
    The groups a survey runs over: Z_n for each order in the range, or every
    abelian group of each order when ``abelian`` is set.
    """
    if min_n < 2 or max_n < min_n:
        raise ParameterError("Invalid order range {}..{}"
                             .format(min_n, max_n))
    groups = []
    for n in range(min_n, max_n + 1):
        if odd_only and n % 2 == 0:
            continue
        if abelian:
            check_size(n, conf.abelian_stream_max_order,
                       'abelian stream order')
            groups.extend(abelian_groups(n))
        else:
            groups.append(make_cyclic(n))
    return groups


@dataclass
class SurveyOptions:
    """
    Parameters
    ----------
    with_compat : bool or None
        Run the compatibility search. None runs it for orders up to
        ``conf.compat_survey_max_order``.
    node_limit : int or None
        Node limit for the compatibility search.
    dedupe : bool
        Keep one connection set per orbit of the group automorphisms.
    require : tuple
        Filters (condition, witness) applied before classification;
        a witness of None accepts any witness.
    workers : int
        Worker processes.
    """
    with_compat: Optional[bool] = None
    node_limit: Optional[int] = None
    dedupe: bool = False
    require: tuple = ()
    workers: int = 1

    def compat_for(self, order):
        if self.with_compat is None:
            return order <= conf.compat_survey_max_order
        return self.with_compat

    def to_dict(self):
        return {'withCompat': self.with_compat, 'nodeLimit': self.node_limit,
                'dedupe': self.dedupe,
                'require': [list(r) for r in self.require]}


_RECORD_KEYS = {
    'group': 'group', 'connection_set': 'connectionSet', 'status': 'status',
    'aut_order': 'autOrder', 'dcover_aut_order': 'dcoverAutOrder',
    'connected': 'connected', 'bipartite': 'bipartite',
    'vertex_determining': 'vertexDetermining',
    'trivial_reasons': 'trivialReasons', 'conditions': 'conditions',
    'arc_transitive': 'arcTransitive', 'edge_transitive': 'edgeTransitive',
    'normal_cayley': 'normalCayley', 'compatible': 'compatible',
    'compat_witness': 'compatWitness', 'errors': 'errors',
    'elapsed_ms': 'elapsedMs'}
_ORDER_FIELDS = ('aut_order', 'dcover_aut_order')


@dataclass
class SurveyRecord:
    group: list
    connection_set: list
    status: Optional[str] = None
    aut_order: Optional[int] = None
    dcover_aut_order: Optional[int] = None
    connected: Optional[bool] = None
    bipartite: Optional[bool] = None
    vertex_determining: Optional[bool] = None
    trivial_reasons: list = field(default_factory=list)
    conditions: Optional[dict] = None
    arc_transitive: Optional[bool] = None
    edge_transitive: Optional[bool] = None
    normal_cayley: Optional[bool] = None
    compatible: Optional[bool] = None
    compat_witness: Optional[list] = None
    errors: dict = field(default_factory=dict)
    elapsed_ms: dict = field(default_factory=dict)

    @property
    def key(self):
        return 'x'.join(str(d) for d in self.group) or '1', \
            tuple(self.connection_set)

    @property
    def order(self):
        return math.prod(self.group)

    @property
    def is_cyclic(self):
        return len(self.group) <= 1

    @property
    def stable(self):
        return self.status == 'stable'

    @property
    def nontrivially_unstable(self):
        return self.status == 'nontrivially_unstable'

    def holds(self, name, witness=None):
        """
        Whether condition ``name`` holds, with ``witness`` among its
        witnesses when one is given. False for non-cyclic groups.
        """
        if not self.conditions:
            return False
        result = self.conditions[name]
        if witness is None:
            return result['holds']
        return witness in result['witnesses']

    @property
    def c2_witnesses(self):
        if not self.conditions:
            return []
        return list(self.conditions['c2']['witnesses'])

    def to_dict(self):
        data = asdict(self)
        # group orders as decimal strings
        for name in _ORDER_FIELDS:
            if data[name] is not None:
                data[name] = str(data[name])
        return {_RECORD_KEYS[k]: v for k, v in data.items()}

    @classmethod
    def from_dict(cls, data):
        reverse = {v: k for k, v in _RECORD_KEYS.items()}
        fields = {reverse[k]: v for k, v in data.items() if k in reverse}
        for name in _ORDER_FIELDS:
            if fields.get(name) is not None:
                fields[name] = int(fields[name])
        return cls(**fields)


def _timed(record, stage, func):
    start = time.perf_counter()
    try:
        return func()
    except CircstabError as exc:
        record.errors[stage] = '{}: {}'.format(type(exc).__name__, exc)
        return None
    finally:
        record.elapsed_ms[stage] = round(
            (time.perf_counter() - start) * 1000, 3)


def classify_one(G, S, options=None):
    """
    Run the full pipeline on Cay(G, S): stability, the arithmetic
    conditions (cyclic groups only), transitivity, normality and
    optionally compatibility.

    Errors raised by a stage are stored in ``record.errors`` under the
    stage name and leave that stage's fields unset. Building the graph is
    the ``graph`` stage; when it fails, the stages that need the graph are
    skipped.

    Returns
    -------
    `SurveyRecord`
    """
    options = options or SurveyOptions()
    members = G.connection_set(S)
    record = SurveyRecord(list(G.invariant_factors), members)
    elements = G.as_elements(members)
    graph = _timed(record, 'graph', lambda: cayley_graph(G, elements))

    verdict = None
    if graph is not None:
        verdict = _timed(record, 'stability', lambda: classify(graph))
    if verdict is not None:
        record.status = verdict.status.value
        record.aut_order = verdict.aut_order
        record.dcover_aut_order = verdict.dcover_aut_order
        record.connected = verdict.connected
        record.bipartite = verdict.bipartite
        record.vertex_determining = verdict.vertex_determining
        record.trivial_reasons = list(verdict.trivial_reasons)

    if G.is_cyclic:
        report = _timed(record, 'conditions',
                        lambda: check_all(G.order, members))
        if report is not None:
            record.conditions = report.to_dict()

    if graph is not None:
        record.arc_transitive = _timed(record, 'arc_transitive',
                                       lambda: is_arc_transitive(graph))
        record.edge_transitive = _timed(record, 'edge_transitive',
                                        lambda: is_edge_transitive(graph))
        record.normal_cayley = _timed(record, 'normal_cayley',
                                      lambda: is_normal_cayley(G, elements))

    if options.compat_for(G.order):
        candidates = []
        if verdict is not None and verdict.tf_witness is not None:
            candidates.append(compatible_from_tf(*verdict.tf_witness))
        result = _timed(record, 'compat', lambda: compatible_cayley_search(
            G, elements, options.node_limit, candidates))
        if result is not None:
            record.compatible = result.compatible
            if result.witness is not None:
                record.compat_witness = list(result.witness)
            if result.inconclusive:
                warnings.warn("Compatibility search for {} {} was "
                              "inconclusive".format(G, members),
                              CircstabWarning)
    return record


class SurveyAggregate:
    """
    Counts over the records of a survey, and the keys of records worth a
    second look: stable graphs meeting a corrected condition, nontrivially
    unstable graphs meeting no original condition or without a compatible
    matrix, arc-transitive circulants that are nontrivially unstable or
    whose stability disagrees with the structural prediction, and stable
    compatible graphs.
    """

    def __init__(self):
        self.total = 0
        self.records = []
        self.by_status = {}
        self.by_order = {}
        self.by_condition = {name: {'holds': 0, 'vacuous': 0, 'unstable': 0}
                             for name in CONDITIONS}
        self.errors = 0
        self.nontrivially_unstable = []
        self.corrected_condition_violations = []
        self.unconditioned_unstable = []
        self.incompatible_unstable = []
        self.arc_transitive_unstable = []
        self.arc_transitive_stability_mismatches = []
        self.compatible_stable = []
        self.count_law_violations = []

    def add(self, record):
        self.total += 1
        self.records.append(record)
        key = _key_repr(record)
        status = record.status or 'error'
        self.by_status[status] = self.by_status.get(status, 0) + 1
        self.by_order[record.order] = self.by_order.get(record.order, 0) + 1
        if record.errors:
            self.errors += 1

        if record.conditions:
            for name in CONDITIONS:
                result = record.conditions[name]
                if result['holds']:
                    counts = self.by_condition[name]
                    counts['holds'] += 1
                    counts['vacuous'] += bool(result['vacuous'])
                    if record.status is not None and not record.stable:
                        counts['unstable'] += 1
            corrected = any(record.holds(name) for name in
                            ('c1', 'c2prime', 'c3', 'c4'))
            original = any(record.holds(name) for name in
                           ('c1', 'c2', 'c3', 'c4'))
            if corrected and record.stable:
                self.corrected_condition_violations.append(key)
            if record.nontrivially_unstable and not original:
                self.unconditioned_unstable.append(key)

        if record.nontrivially_unstable:
            self.nontrivially_unstable.append(key)
            if record.compatible is False:
                self.incompatible_unstable.append(key)
            if record.is_cyclic and record.arc_transitive:
                self.arc_transitive_unstable.append(key)

        if (record.is_cyclic and record.connected and record.arc_transitive
                and record.status is not None):
            expected = not record.bipartite and record.vertex_determining
            if record.stable != expected:
                self.arc_transitive_stability_mismatches.append(key)

        if (record.connected and record.bipartite is False and
                record.vertex_determining and record.stable and
                record.compatible):
            self.compatible_stable.append(key)

    def check_count_law(self):
        """
        Record the orders whose number of circulants differs from
        2^ceil((n-1)/2) - 1.
        """
        for n, count in sorted(self.by_order.items()):
            expected = 2 ** (n // 2) - 1
            if count != expected:
                self.count_law_violations.append(
                    {'n': n, 'count': count, 'expected': expected})

    def to_dict(self):
        return {'total': self.total,
                'byStatus': dict(sorted(self.by_status.items())),
                'byOrder': {str(n): c
                            for n, c in sorted(self.by_order.items())},
                'byCondition': self.by_condition,
                'errors': self.errors,
                'nontriviallyUnstable': self.nontrivially_unstable,
                'correctedConditionViolations':
                    self.corrected_condition_violations,
                'unconditionedUnstable': self.unconditioned_unstable,
                'incompatibleUnstable': self.incompatible_unstable,
                'arcTransitiveUnstable': self.arc_transitive_unstable,
                'arcTransitiveStabilityMismatches':
                    self.arc_transitive_stability_mismatches,
                'compatibleStable': self.compatible_stable,
                'countLawViolations': self.count_law_violations}


def _key_repr(record):
    group, members = record.key
    return {'group': group, 'connectionSet': list(members)}


def records_table(records):
    """
    One row per record as an `~astropy.table.Table`, with the condition
    flags flattened into columns.
    """
    rows = []
    for r in records:
        row = {'group': r.key[0],
               'connection_set': ' '.join(str(s) for s in r.connection_set),
               'status': r.status or '',
               'aut_order': r.aut_order if r.aut_order is not None else -1,
               'dcover_aut_order': (r.dcover_aut_order
                                    if r.dcover_aut_order is not None else -1),
               'connected': _flag(r.connected),
               'bipartite': _flag(r.bipartite),
               'vertex_determining': _flag(r.vertex_determining),
               'arc_transitive': _flag(r.arc_transitive),
               'edge_transitive': _flag(r.edge_transitive),
               'normal_cayley': _flag(r.normal_cayley),
               'compatible': _flag(r.compatible)}
        for name in CONDITIONS:
            row[name] = _flag(r.holds(name)) if r.conditions else ''
        rows.append(row)
    names = ['group', 'connection_set', 'status', 'aut_order',
             'dcover_aut_order', 'connected', 'bipartite',
             'vertex_determining', 'arc_transitive', 'edge_transitive',
             'normal_cayley', 'compatible'] + list(CONDITIONS)
    if not rows:
        return Table(names=names, dtype=[str, str, str, int, int] +
                     [str] * (len(names) - 5))
    return Table(rows=[[row[name] for name in names] for row in rows],
                 names=names)


def _flag(value):
    if value is None:
        return ''
    return 'true' if value else 'false'


def _canonical_under(automs, members):
    image_sets = (sorted(alpha.apply_to_set(members)) for alpha in automs)
    return min(image_sets) == members


def _work_items(groups, options):
    """
    (factors, connection set) pairs in enumeration order after the
    filters and deduplication.
    """
    for G in groups:
        if G.order < 2:
            continue
        automs = automorphisms(G) if options.dedupe else None
        for S in _connection_sets(G):
            if automs is not None and not _canonical_under(automs, S):
                continue
            if options.require:
                if not G.is_cyclic:
                    continue
                report = check_all(G.order, S)
                results = {r.name: r for r in report.results()}
                if not all(results[name].holds and
                           (w is None or w in results[name].witnesses)
                           for name, w in options.require):
                    continue
            yield tuple(G.invariant_factors), S


class _Classifier:
    """
    Picklable callable classifying one (factors, connection set) item.
    """

    def __init__(self, options):
        self.options = options

    def __call__(self, item):
        factors, S = item
        G = AbelianGroup(factors)
        return classify_one(G, G.as_elements(S), self.options)


def _set_conf(values):
    for name, value in values.items():
        setattr(conf, name, value)


def _conf_snapshot():
    return {name: getattr(conf, name) for name in conf}


def _read_existing(path, header, force=False):
    """
    The records already in ``path``, keyed like `SurveyRecord.key`, and the
    byte offset just past the last complete line. An interrupted run can
    leave a last line without its newline, or one that does not parse;
    that line is dropped and its record classified again.

    Raises
    ------
    ValueError
        If an earlier line does not parse, the first line is not a survey
        header, or the header parameters differ from ``header`` and
        ``force`` is not set.
    """
    with open(path, 'rb') as fh:
        data = fh.read()
    lines = data.split(b'\n')
    if lines[-1]:
        log.warning("Dropping unterminated last line of {}".format(path))
    lines = lines[:-1]

    done = {}
    offset = 0
    found = None
    for i, line in enumerate(lines):
        try:
            parsed = json.loads(line) if line.strip() else None
        except ValueError:
            if i < len(lines) - 1:
                raise
            log.warning("Dropping unreadable last line of {}".format(path))
            break
        offset += len(line) + 1
        if parsed is None:
            continue
        if found is None:
            found = parsed
            if (not isinstance(found, dict) or
                    found.get('format') != SURVEY_FORMAT):
                raise ValueError("not a survey file")
            if found.get('params') != header['params']:
                if not force:
                    raise ValueError("written with different parameters")
                log.warning("Resuming {} written with different parameters"
                            .format(path))
            continue
        record = SurveyRecord.from_dict(parsed)
        done[record.key] = record
    return done, offset


def run_survey(groups, options=None, out=None, resume=False, verbose=False,
               csv=None, force=False):
    """
    Classify every connection set of every group and aggregate the results.

    Parameters
    ----------
    groups : iterable of `~circstab.abelian.AbelianGroup`
    options : `SurveyOptions`, optional
    out : str, optional
        JSON-lines file: a header line with the parameters, then one record
        per line in enumeration order.
    resume : bool
        Keep the records already in ``out`` and classify only the rest.
        A partial last line is cut off before appending.
    verbose : bool
        Show a progress bar on stderr.
    csv : str, optional
        Write one row per record to this CSV file at the end.
    force : bool
        Resume even when ``out`` was written with other parameters.

    Returns
    -------
    `SurveyAggregate`

    Raises
    ------
    SurveyIOError
        If ``out`` or ``csv`` cannot be read or written, or ``out`` holds a
        survey with other parameters and ``force`` is not set. The
        aggregate of the records finished so far is attached.
    """
    options = options or SurveyOptions()
    groups = list(groups)
    items = list(_work_items(groups, options))
    header = {'format': SURVEY_FORMAT, 'version': SURVEY_VERSION,
              'params': {'groups': [G.descriptor for G in groups],
                         'options': options.to_dict()}}
    aggregate = SurveyAggregate()

    done = {}
    offset = 0
    if out is not None and resume and os.path.exists(out):
        try:
            done, offset = _read_existing(out, header, force)
            os.truncate(out, offset)
        except (OSError, ValueError) as exc:
            raise SurveyIOError("Cannot resume from {}: {}".format(out, exc),
                                aggregate)
        log.info("Resuming survey: {} of {} records present"
                 .format(len(done), len(items)))

    def key_of(item):
        factors, S = item
        return 'x'.join(str(d) for d in factors) or '1', tuple(S)

    pending = [item for item in items if key_of(item) not in done]
    log.info("Survey over {} groups: {} connection sets, {} to classify"
             .format(len(groups), len(items), len(pending)))

    classifier = _Classifier(options)
    with ExitStack() as stack:
        writer = None
        if out is not None:
            try:
                writer = stack.enter_context(open(out, 'a' if offset else 'w'))
                if not offset:
                    writer.write(json.dumps(header) + '\n')
            except OSError as exc:
                raise SurveyIOError("Cannot write {}: {}".format(out, exc),
                                    aggregate)

        executor = None
        if options.workers > 1 and len(pending) > 1:
            executor = stack.enter_context(ProcessPoolExecutor(
                max_workers=options.workers, initializer=_set_conf,
                initargs=(_conf_snapshot(),)))
            results = executor.map(classifier, pending,
                                   chunksize=max(1, len(pending) //
                                                 (8 * options.workers)))
        else:
            results = map(classifier, pending)

        bar = None
        if verbose:
            bar = stack.enter_context(ProgressBar(len(items),
                                                  file=sys.stderr))

        try:
            for item in items:
                record = done.get(key_of(item))
                if record is None:
                    record = next(results)
                    if writer is not None:
                        try:
                            writer.write(json.dumps(record.to_dict()) + '\n')
                            writer.flush()
                        except OSError as exc:
                            raise SurveyIOError("Cannot write {}: {}"
                                                .format(out, exc), aggregate)
                aggregate.add(record)
                if bar is not None:
                    bar.update()
        except BaseException:
            # do not wait for chunks nobody will read
            if executor is not None:
                executor.shutdown(wait=False, cancel_futures=True)
            raise

    if (not options.require and not options.dedupe and
            all(G.is_cyclic for G in groups)):
        aggregate.check_count_law()

    if csv is not None:
        try:
            records_table(aggregate.records).write(csv, format='ascii.csv',
                                                   overwrite=True)
        except OSError as exc:
            raise SurveyIOError("Cannot write {}: {}".format(csv, exc),
                                aggregate)

    log.info("Survey finished: {}".format(aggregate.by_status))
    return aggregate
