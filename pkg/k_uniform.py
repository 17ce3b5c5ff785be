# k_uniform.py

import argparse
import json
import os
import sys
import time

import pandas as pd

import kuniform.code.circuit_emitter as ce
import kuniform.code.crosscheck as cc
import kuniform.code.dense_oracle as do
import kuniform.code.uniformity_engine as ue
import kuniform.tools.graph_core as gc
import kuniform.tools.graph_families as gf
import kuniform.tools.validation_checks as vc
from kuniform.tools.errors import BudgetExceededError, KUniformError
from kuniform.tools.pauli_algebra import to_string, weight

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2


def str_to_bool(value):
    if isinstance(value, bool):
        return value
    if value.lower() in {'true', 't', 'yes', 'y', '1'}:
        return True
    elif value.lower() in {'false', 'f', 'no', 'n', '0'}:
        return False
    else:
        raise argparse.ArgumentTypeError(f"Invalid boolean value: {value}")


class _Parser(argparse.ArgumentParser):
    """Turns usage errors into exceptions so run() can report them as JSON."""

    def error(self, message):
        raise vc.ArgumentError(message)


def _flag(parser, *names, help):
    """`--flag` alone means true, `--flag false` is also accepted."""
    parser.add_argument(*names, help=help, required=False, type=str_to_bool,
                        nargs='?', const=True, default=False)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument('-g', '--graph', help='graph file (JSON or edgelist); "-" reads stdin', required=True, type=str)
    _flag(common, '-p', '--pretty', help='print tables instead of JSON')
    _flag(common, '-vv', '--verbose', help='progress bars and timings on stderr')

    search = _Parser(add_help=False)
    search.add_argument('-b', '--budget', help='maximum number of subsets enumerated', required=False, type=int, default=ue.DEFAULT_BUDGET)
    search.add_argument('-t', '--threads', help='worker count, defaults to the available CPUs', required=False, type=int, default=os.cpu_count() or 1)

    target = _Parser(add_help=False)
    group = target.add_mutually_exclusive_group()
    group.add_argument('-k', '--k', help='decide k-uniformity for this k', required=False, type=int, default=None)
    group.add_argument('--max', help='find the largest k (default)', action='store_true')

    parser = _Parser(prog='k-uniform', description='Build, certify and prepare k-uniform graph states')
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('gen', help='generate a graph family')
    gen.add_argument('--family', help='graph family', required=True, choices=gf.FAMILIES)
    gen.add_argument('-s', '--size', help='vertex count, or layer size for bilayer', required=False, type=int, default=None)
    gen.add_argument('-r', '--rows', help='torus rows', required=False, type=int, default=None)
    gen.add_argument('-c', '--cols', help='torus columns', required=False, type=int, default=None)
    gen.add_argument('-f', '--format', help='graph file format', required=False, choices=gc.FORMATS, default='json')
    gen.add_argument('-o', '--out', help='output path, stdout when omitted', required=False, type=str, default=None)
    _flag(gen, '-vv', '--verbose', help='timings on stderr')

    sub.add_parser('check', parents=[common, search, target], help='certify uniformity from stabilizer weights')

    verify = sub.add_parser('verify', parents=[common, search, target], help='verify uniformity with an independent oracle')
    verify.add_argument('-m', '--method', help='oracle', required=False, choices=('stabilizer', 'dense', 'cutrank'), default='dense')
    verify.add_argument('--cap', help='largest qubit count for the dense oracle', required=False, type=int, default=do.DENSE_CAP)

    expand = sub.add_parser('expand', parents=[common], help='list all signed stabilizer elements')
    expand.add_argument('--cap', help='largest qubit count expanded', required=False, type=int, default=do.EXPANSION_CAP)

    circuit = sub.add_parser('circuit', parents=[common], help='emit the preparation circuit')
    circuit.add_argument('-f', '--format', help='circuit format', required=False, choices=ce.CIRCUIT_FORMATS, default='plain')
    circuit.add_argument('-o', '--out', help='output path, stdout when omitted', required=False, type=str, default=None)

    sub.add_parser('adjacency', parents=[common], help='print the correlation-operator matrix')

    crosscheck = sub.add_parser('crosscheck', parents=[common, search], help='compare all three uniformity methods')
    crosscheck.add_argument('--cap', help='largest qubit count for the dense oracle', required=False, type=int, default=do.DENSE_CAP)
    return parser


def _emit_json(stdout, payload):
    stdout.write(json.dumps(payload) + '\n')


def _timed(label, verbose, stderr, func, /, *args, **kwargs):
    start = time.time()
    result = func(*args, **kwargs)
    if verbose:
        print(f"Time taken for {label}: {time.time() - start:.2f} seconds", file=stderr)
    return result


def _check_k(g, k):
    half = g.n // 2
    if k is not None and not 1 <= k <= half:
        raise vc.ArgumentError(f"--k must be in 1..{half} for a {g.n}-qubit graph, got {k}")


# ----------------- Subcommands
def cmd_gen(args, stdin, stdout, stderr):
    spec = gf.FamilySpec(args['family'], n=args['size'], rows=args['rows'], cols=args['cols'])
    g = _timed('graph generation', args['verbose'], stderr, gf.generate_family, spec)
    if args['out'] is None or args['out'] == '-':
        gc.write_graph(g, '-', args['format'], stdout=stdout)
        return EXIT_OK
    vc.validate_output_path(args['out'])
    gc.write_graph(g, args['out'], args['format'])
    _emit_json(stdout, {
        'family': spec.family,
        'parameters': spec.parameters(),
        'n': g.n,
        'edges': len(gc.edges(g)),
        'claimed_uniformity': gf.claimed_uniformity(spec),
        'out': args['out'],
    })
    return EXIT_OK


def _report_table(report):
    rows = [{'size': j, 'min_weight': m.weight, 'subset': ' '.join(map(str, m.subset)), 'product': to_string(m.pauli)}
            for j, m in sorted(report.table.min_weight_by_size.items())]
    lines = [pd.DataFrame(rows, columns=['size', 'min_weight', 'subset', 'product']).to_string(index=False), '']
    bound = 'lower bound' if report.truncated else ('exact' if report.exact else 'not exact')
    lines.append(f"qubits: {report.n}")
    lines.append(f"uniformity: {report.uniformity} ({bound})")
    lines.append(f"AME: {'yes' if report.ame else 'no'}")
    lines.append(f"degree bound: {report.degree_bound}")
    if report.breaking_witness is not None:
        w = report.breaking_witness
        lines.append(f"breaking witness: {{{', '.join(map(str, w.subset))}}} -> {to_string(w.pauli)} (weight {w.weight})")
    if report.k_target is not None:
        verdict = 'unknown' if report.uniform is None else str(report.uniform).lower()
        lines.append(f"{report.k_target}-uniform: {verdict}")
    return '\n'.join(lines) + '\n'


def cmd_check(args, stdin, stdout, stderr):
    g = _load(args, stdin)
    k = args['k']
    _check_k(g, k)
    if k is not None:
        required = ue.subset_count(g.n, k)
        if required > args['budget']:
            raise BudgetExceededError(required, args['budget'])
    report = _timed('uniformity certification', args['verbose'], stderr, ue.certify_uniformity,
                    g, k_target=k, budget=args['budget'], workers=args['threads'], verbose=args['verbose'])
    if args['pretty']:
        stdout.write(_report_table(report))
    else:
        _emit_json(stdout, report.to_dict())
    return EXIT_FAILS if report.uniform is False else EXIT_OK


def _verdict_table(verdicts):
    rows = []
    for v in verdicts:
        rows.append({'k': v.k, 'uniform': v.holds, 'subsets_checked': v.subsets_checked,
                     'failing_subset': '' if v.failing_subset is None else ' '.join(map(str, v.failing_subset))})
    return pd.DataFrame(rows, columns=['k', 'uniform', 'subsets_checked', 'failing_subset']).to_string(index=False) + '\n'


def cmd_verify(args, stdin, stdout, stderr):
    if args['method'] == 'stabilizer':
        return cmd_check(args, stdin, stdout, stderr)
    g = _load(args, stdin)
    _check_k(g, args['k'])
    vc.validate_positive(cap=args['cap'])
    method = args['method']
    if method == 'dense':
        # fail early, before any scan starts
        do.build_state(g, cap=args['cap'])

        def scan(k):
            return do.verify_uniformity_dense(g, k, cap=args['cap'], workers=args['threads'], verbose=args['verbose'])
    else:
        def scan(k):
            return do.verify_uniformity_cutrank(g, k, verbose=args['verbose'])

    start = time.time()
    if args['k'] is not None:
        verdicts = [scan(args['k'])]
    else:
        verdicts = []
        for k in range(1, g.n // 2 + 1):
            verdicts.append(scan(k))
            if not verdicts[-1].holds:
                break
    if args['verbose']:
        print(f"Time taken for {method} verification: {time.time() - start:.2f} seconds", file=stderr)

    if args['k'] is not None:
        verdict = verdicts[0]
        if args['pretty']:
            stdout.write(_verdict_table(verdicts))
        else:
            _emit_json(stdout, {'n': g.n, **verdict.to_dict()})
        return EXIT_OK if verdict.holds else EXIT_FAILS

    uniformity = sum(1 for v in verdicts if v.holds)
    if args['pretty']:
        stdout.write(_verdict_table(verdicts))
        stdout.write(f"uniformity: {uniformity}\n")
    else:
        _emit_json(stdout, {
            'method': method,
            'n': g.n,
            'uniformity': uniformity,
            'ame': uniformity == g.n // 2 and uniformity >= 1,
            'checks': [v.to_dict() for v in verdicts],
        })
    return EXIT_OK


def cmd_expand(args, stdin, stdout, stderr):
    g = _load(args, stdin)
    terms = _timed('Bloch expansion', args['verbose'], stderr, do.bloch_expansion, g, cap=args['cap'])
    if not args['pretty']:
        stdout.write(''.join(to_string(word) + '\n' for _, word in terms))
        return EXIT_OK
    rows = [{'subset': ' '.join(map(str, subset)) or '-', 'weight': weight(word), 'term': to_string(word)}
            for subset, word in terms]
    counts = {}
    for row in rows:
        counts[row['weight']] = counts.get(row['weight'], 0) + 1
    distribution = pd.DataFrame({'weight': list(range(g.n + 1)),
                                 'elements': [counts.get(w, 0) for w in range(g.n + 1)]})
    stdout.write(pd.DataFrame(rows, columns=['subset', 'weight', 'term']).to_string(index=False) + '\n\n')
    stdout.write(distribution.to_string(index=False) + '\n')
    return EXIT_OK


def cmd_circuit(args, stdin, stdout, stderr):
    g = _load(args, stdin)
    circuit = ce.emit_circuit(g)
    text = ce.render(circuit, args['format'])
    if args['out'] is None:
        stdout.write(text)
        return EXIT_OK
    vc.validate_output_path(args['out'])
    try:
        with open(args['out'], 'w', encoding='ascii') as f:
            f.write(text)
    except OSError as e:
        raise vc.ArgumentError(f"cannot write circuit file {args['out']}: {e.strerror}") from e
    _emit_json(stdout, {'n': circuit.n, 'h': circuit.count('h'), 'cz': circuit.count('cz'),
                        'format': args['format'], 'out': args['out']})
    return EXIT_OK


def cmd_adjacency(args, stdin, stdout, stderr):
    g = _load(args, stdin)
    stdout.write(gc.adjacency_display(g) + '\n')
    return EXIT_OK


def cmd_crosscheck(args, stdin, stdout, stderr):
    g = _load(args, stdin)
    report = _timed('cross-check', args['verbose'], stderr, cc.crosscheck, g, budget=args['budget'],
                    threads=args['threads'], dense_cap=args['cap'], verbose=args['verbose'])
    if args['pretty']:
        frame = pd.DataFrame.from_dict(report.verdicts, orient='index')
        frame.index.name = 'k'
        stdout.write(frame.to_string() + '\n')
        stdout.write(f"agree: {'yes' if report.agree else 'no'}\n")
    else:
        _emit_json(stdout, report.to_dict())
    return EXIT_OK if report.agree else EXIT_FAILS


COMMANDS = {
    'gen': cmd_gen,
    'check': cmd_check,
    'verify': cmd_verify,
    'expand': cmd_expand,
    'circuit': cmd_circuit,
    'adjacency': cmd_adjacency,
    'crosscheck': cmd_crosscheck,
}


def _load(args, stdin):
    vc.validate_paths(graph_file=args['graph'])
    vc.validate_positive(budget=args.get('budget'), threads=args.get('threads'))
    return gc.read_graph(args['graph'], stdin=stdin)


def run(argv, stdin=None, stdout=None, stderr=None):
    """
    Runs one subcommand and returns its exit status: 0 success, 1 the property
    does not hold, 2 usage or input errors, 3 budget or cap exceeded. Errors are
    written to stderr as one line of JSON.
    """
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        args = vars(build_parser().parse_args(argv))
        return COMMANDS[args['command']](args, stdin, stdout, stderr)
    except KUniformError as e:
        _emit_json(stderr, {'error': type(e).__name__, 'message': str(e), 'exit_code': e.exit_code})
        return e.exit_code
    except (ValueError, TypeError) as e:
        _emit_json(stderr, {'error': type(e).__name__, 'message': str(e), 'exit_code': EXIT_USAGE})
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
