"""
Command line interface: ``circstab <command> [options]``.

Reports are printed as JSON on stdout. Exit codes are 0 on success, 1 when
a verification fails or survey output cannot be written, 2 for invalid
input and 3 when a configured size limit is exceeded.
"""

import os
import sys
import argparse
from contextlib import ExitStack

import astropy
from astropy import log

if __package__ == '':
    __package__ = 'circstab'
from . import conf
from .abelian import make_cyclic, make_product
from .autgroup import is_arc_transitive, is_edge_transitive, is_normal_cayley
from .compat import (compatible_cayley_search, compatible_matrix_search,
                     thm3_certificate, thm3_instances)
from .graph import cayley_graph, double_cover, double_cover_as_circulant
from .skeleton import boolean_square, dispensable_edges, cartesian_skeleton
from .stability import classify, compatible_from_tf
from .survey import SurveyOptions, run_survey, survey_groups, CONDITIONS
from .utils import (CircstabError, SizeLimitError, SurveyIOError,
                    ParameterError, dumps, parse_factors, parse_set)
from .wilson import check_all

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_SIZE_LIMIT = 3


def _add_graph_args(parser, cyclic_only=False):
    if cyclic_only:
        parser.add_argument('--n', type=int, required=True,
                            help='order of the cyclic group')
    else:
        which = parser.add_mutually_exclusive_group(required=True)
        which.add_argument('--n', type=int, help='order of the cyclic group')
        which.add_argument('--group',
                           help='product of cyclic groups, e.g. 4x4')
    parser.add_argument('--set', required=True,
                        help='connection set, e.g. 1,4,11,14 or '
                             '"(2,2),(0,2)"')


def _group(args):
    if getattr(args, 'group', None):
        return make_product(parse_factors(args.group))
    if args.n is None or args.n < 2:
        raise ParameterError("--n must be at least 2")
    return make_cyclic(args.n)


def _emit(text, out=None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, 'w') as fh:
            fh.write(text)


def _print_json(obj, out=None):
    _emit(dumps(obj) + '\n', out)


def _set_repr(G, indices):
    if G.is_cyclic:
        return [int(s) for s in indices]
    return [G.label(s) for s in indices]


def cmd_analyze(args):
    G = _group(args)
    members = G.connection_set(parse_set(args.set))
    graph = cayley_graph(G, G.as_elements(members))
    verdict = classify(graph)
    report = {'group': G.descriptor,
              'connectionSet': _set_repr(G, members),
              'vertices': graph.n, 'edges': graph.num_edges,
              'connected': verdict.connected,
              'bipartite': verdict.bipartite,
              'vertexDetermining': verdict.vertex_determining,
              'verdict': verdict.to_dict()}
    if G.is_cyclic:
        report['conditions'] = check_all(G.order, members).to_dict()
    report['arcTransitive'] = is_arc_transitive(graph)
    report['edgeTransitive'] = is_edge_transitive(graph)
    try:
        report['normalCayley'] = is_normal_cayley(G, G.as_elements(members))
    except SizeLimitError as exc:
        log.warning("Normality not decided: {}".format(exc))
        report['normalCayley'] = None

    run_compat = {'on': True, 'off': False}.get(args.compat)
    if run_compat is None:
        run_compat = (verdict.tf_witness is not None or
                      G.order <= conf.compat_survey_max_order)
    if run_compat:
        candidates = []
        if verdict.tf_witness is not None:
            candidates.append(compatible_from_tf(*verdict.tf_witness))
        result = compatible_cayley_search(G, G.as_elements(members),
                                          args.node_limit, candidates)
        report['compatibility'] = result.to_dict()
    else:
        report['compatibility'] = None
    _print_json(report)
    return EXIT_OK


def cmd_conditions(args):
    members = make_cyclic(args.n).connection_set(parse_set(args.set))
    _print_json(check_all(args.n, members).to_dict())
    return EXIT_OK


def cmd_compat(args):
    G = _group(args)
    elements = G.as_elements(G.connection_set(parse_set(args.set)))
    if args.method == 'matrix':
        result = compatible_matrix_search(cayley_graph(G, elements),
                                          args.node_limit)
    else:
        result = compatible_cayley_search(G, elements, args.node_limit)
    _print_json(result.to_dict())
    return EXIT_OK


def _edges(graph):
    return [list(e) for e in graph.edges()]


def cmd_skeleton(args):
    G = _group(args)
    members = G.connection_set(parse_set(args.set))
    graph = cayley_graph(G, G.as_elements(members))
    square = boolean_square(graph)
    skeleton = cartesian_skeleton(graph)
    if args.emit == 'dot':
        _emit(square.to_dot('BS') + skeleton.to_dot('Sk'), args.out)
        return EXIT_OK
    # both graphs are Cayley graphs of G, so the neighbours of 0 give the set
    report = {'booleanSquare': {
                  'connectionSet': _set_repr(G, square.neighbours(0)),
                  'edges': _edges(square)},
              'dispensable': [list(e) for e in dispensable_edges(graph)],
              'skeleton': {
                  'connectionSet': _set_repr(G, skeleton.neighbours(0)),
                  'edges': _edges(skeleton)}}
    _print_json(report, args.out)
    return EXIT_OK


def cmd_dcover(args):
    G = _group(args)
    members = G.connection_set(parse_set(args.set))
    if args.as_circulant:
        if not G.is_cyclic:
            raise ParameterError("--as-circulant needs a cyclic group")
        order, T = double_cover_as_circulant(G.order, members)
        _print_json({'n': order, 'connectionSet': T}, args.out)
        return EXIT_OK
    cover = double_cover(cayley_graph(G, G.as_elements(members)))
    if args.emit == 'dot':
        _emit(cover.to_dot(), args.out)
    else:
        report = cover.to_dict()
        report['labels'] = cover.labels
        _print_json(report, args.out)
    return EXIT_OK


def _parse_require(values):
    require = []
    for value in values or ():
        name, _, witness = value.partition('=')
        name = name.strip().lower().replace("'", 'prime')
        if name not in CONDITIONS:
            raise ParameterError("Unknown condition '{}'; expected one of {}"
                                 .format(name, ', '.join(CONDITIONS)))
        try:
            require.append((name, int(witness) if witness else None))
        except ValueError:
            raise ParameterError("Invalid witness in '{}'".format(value))
    return tuple(require)


def cmd_survey(args):
    if args.abelian:
        max_n = args.max_order if args.max_order is not None else args.max_n
    else:
        max_n = args.max_n
    if max_n is None:
        raise ParameterError("survey needs --max-n or --max-order")
    groups = survey_groups(args.min_n, max_n, odd_only=args.odd_only,
                           abelian=args.abelian)
    options = SurveyOptions(with_compat=args.with_compat,
                            node_limit=args.node_limit,
                            dedupe=args.dedupe_ci,
                            require=_parse_require(args.require),
                            workers=args.workers)
    try:
        aggregate = run_survey(groups, options, out=args.out,
                               resume=args.resume, verbose=args.verbose,
                               csv=args.csv, force=args.force)
    except SurveyIOError as exc:
        log.error(str(exc))
        if exc.aggregate is not None:
            _print_json(exc.aggregate.to_dict())
        return EXIT_CHECK_FAILED
    _print_json(aggregate.to_dict())
    return EXIT_OK


def cmd_family(args):
    if args.max_order is not None:
        pairs = thm3_instances(args.max_order)
    elif args.l is not None and args.m is not None:
        pairs = [(args.l, args.m)]
    else:
        raise ParameterError("family thm3 needs --l and --m, or --max-order")
    certificates = [thm3_certificate(l, m) for l, m in pairs]
    if args.max_order is None:
        _print_json(certificates[0].to_dict())
    else:
        _print_json([c.to_dict() for c in certificates])
    if all(c.passed for c in certificates):
        return EXIT_OK
    return EXIT_CHECK_FAILED


def make_parser():
    parser = argparse.ArgumentParser(
        prog='circstab', allow_abbrev=False,
        description='Stability of circulant and abelian Cayley graphs.')
    parser.add_argument('--log-level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='logger level (default: WARNING)')
    parser.add_argument('--max-vertices', type=int,
                        help='largest graph given to the automorphism search '
                             '(default: {})'.format(conf.max_vertices))
    parser.add_argument('--max-group-order', type=int,
                        help='largest group whose automorphisms are '
                             'enumerated (default: {})'
                             .format(conf.max_group_order))
    commands = parser.add_subparsers(dest='command', required=True)

    analyze = commands.add_parser('analyze', help='full report for one graph')
    _add_graph_args(analyze)
    analyze.add_argument('--compat', choices=['auto', 'on', 'off'],
                         default='auto',
                         help='run the compatibility search; auto runs it '
                              'for unstable graphs and small orders')
    analyze.add_argument('--node-limit', type=int)
    analyze.set_defaults(func=cmd_analyze)

    conditions = commands.add_parser('conditions',
                                     help='arithmetic instability conditions')
    _add_graph_args(conditions, cyclic_only=True)
    conditions.set_defaults(func=cmd_conditions)

    compat = commands.add_parser('compat', help='compatible adjacency matrix')
    _add_graph_args(compat)
    compat.add_argument('--method', choices=['cayley', 'matrix'],
                        default='cayley')
    compat.add_argument('--node-limit', type=int)
    compat.set_defaults(func=cmd_compat)

    skeleton = commands.add_parser('skeleton',
                                   help='Boolean square and skeleton')
    _add_graph_args(skeleton)
    skeleton.add_argument('--emit', choices=['json', 'dot'], default='json')
    skeleton.add_argument('--out')
    skeleton.set_defaults(func=cmd_skeleton)

    dcover = commands.add_parser('dcover', help='canonical double cover')
    _add_graph_args(dcover)
    dcover.add_argument('--emit', choices=['json', 'dot'], default='json')
    dcover.add_argument('--as-circulant', action='store_true',
                        help='connection set of Z_2n for odd n')
    dcover.add_argument('--out')
    dcover.set_defaults(func=cmd_dcover)

    survey = commands.add_parser('survey', help='exhaustive survey')
    survey.add_argument('--min-n', type=int, default=2)
    survey.add_argument('--max-n', type=int)
    survey.add_argument('--max-order', type=int,
                        help='largest order for --abelian')
    survey.add_argument('--odd-only', action='store_true')
    survey.add_argument('--abelian', action='store_true',
                        help='every abelian group of each order')
    survey.add_argument('--workers', type=int, default=1)
    survey.add_argument('--out', help='JSON-lines record file')
    survey.add_argument('--resume', action='store_true')
    survey.add_argument('--force', action='store_true',
                        help='resume a file written with other parameters')
    survey.add_argument('--csv', help='CSV table of the records')
    survey.add_argument('--with-compat', dest='with_compat',
                        action='store_true', default=None)
    survey.add_argument('--no-compat', dest='with_compat',
                        action='store_false')
    survey.add_argument('--node-limit', type=int)
    survey.add_argument('--dedupe-ci', action='store_true',
                        help='one connection set per automorphism orbit')
    survey.add_argument('--require', action='append', metavar='COND[=W]',
                        help='keep sets satisfying a condition, optionally '
                             'with a given witness, e.g. c2=3')
    survey.add_argument('--verbose', action='store_true')
    survey.set_defaults(func=cmd_survey)

    family = commands.add_parser('family', help='verified graph families')
    family.add_argument('name', choices=['thm3'])
    family.add_argument('--l', type=int)
    family.add_argument('--m', type=int)
    family.add_argument('--max-order', type=int)
    family.set_defaults(func=cmd_family)
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    log.setLevel(args.log_level)
    if os.environ.get('NO_COLOR'):
        astropy.conf.use_color = False

    with ExitStack() as stack:
        if args.max_vertices is not None:
            stack.enter_context(conf.set_temp('max_vertices',
                                              args.max_vertices))
        if args.max_group_order is not None:
            stack.enter_context(conf.set_temp('max_group_order',
                                              args.max_group_order))
        try:
            return args.func(args)
        except SizeLimitError as exc:
            log.error(str(exc))
            return EXIT_SIZE_LIMIT
        except (CircstabError, ValueError) as exc:
            log.error(str(exc))
            return EXIT_BAD_INPUT
        except OSError as exc:
            log.error(str(exc))
            return EXIT_CHECK_FAILED


if __name__ == '__main__':
    sys.exit(main())
