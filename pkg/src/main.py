import sys
import json
import argparse
from collections import Counter
from fractions import Fraction

from bijections import (MAPS, PRESERVED, ColoredDyckPath, contains_010, format_tree, in_class_a,
                        in_class_b, is_indecomposable, iter_dyck_paths, iter_set_partitions,
                        iter_trees, max_block_rank, parse_tree, path_capacity, path_type,
                        tree_capacity, tree_edges, tree_to_dyck, tree_type, weighted_path_total)
from closed_forms import dyck_last, formula_value, stirling2, triangle_T
from enumeration import (CountOverflow, PatternSet, SizeTooLarge, avoidance_sequence, conjecture_report,
                         count_avoiders, distribution, iter_avoiders, joint_distribution, table_report,
                         wilf_classify)
from expected_data import (ORACLES, load_expected_values, oracle_for, oracle_kind,
                           oracle_value, pair_labels)
from inversion_sequences import Pattern, avoids_all, format_word, parse_word, stats
from power_series import UNIVARIATE, gf, parse_fraction, residual
from recurrences import TRIANGLES, a_triangle, b_triangle, gentree_counts, write_triangle_csv, z_triangle
from utils import ConfigManager

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

PROVENANCE = {
    'formula': 'formula',
    'oeis-formula': 'formula',
    'series': 'formula',
    'recurrence': 'recurrence',
}

RESIDUAL_POINTS = (
    (Fraction(1, 2), Fraction(1, 3)),
    (Fraction(2, 5), Fraction(3, 7)),
    (Fraction(-1, 3), Fraction(1, 4)),
)


def format_colored_path(path: ColoredDyckPath) -> str:
    return ','.join(f"{h}{'r' if red else ''}" for h, red in zip(path.heights, path.red))


def parse_colored_path(text: str) -> ColoredDyckPath:
    """'0r,1,1r' -> heights (0,1,1), red flags (True,False,True)."""
    heights, red = [], []
    for token in text.strip().strip('()').split(','):
        token = token.strip().lower()
        is_red = token.endswith('r')
        try:
            heights.append(int(token[:-1] if is_red else token))
        except ValueError:
            raise ValueError(f"Cannot parse colored step '{token}'") from None
        red.append(is_red)
    return ColoredDyckPath(tuple(heights), tuple(red))


def format_partition(blocks) -> str:
    return '/'.join(','.join(map(str, block)) for block in blocks)


def parse_partition(text: str) -> tuple:
    """'1,4,6/2,3/5' -> ((1,4,6),(2,3),(5,))."""
    return tuple(parse_word(block) for block in text.strip().split('/') if block.strip())


def read_bfile(lines) -> dict:
    """Parse 'n a(n)' lines, skipping blanks and '#' comments."""
    values = {}
    for line in lines:
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        n, value = line.split()
        values[int(n)] = int(value)
    return values


def _domain(n, *patterns) -> list:
    return list(iter_avoiders(n, PatternSet.of(*patterns)))


def _bijection_failures(nmax, domain, codomain, forward, backward=None, preserved=()):
    failures = []
    for n in range(1, nmax + 1):
        source = _domain(n, *domain)
        images = [forward(e) for e in source]
        if len(set(images)) != len(source) or set(images) != set(_domain(n, *codomain)):
            failures.append(f"n={n}: image is not ({','.join(codomain)})")
        for e, f in zip(source, images):
            if backward is not None and backward(f) != e:
                failures.append(f"inverse fails on {format_word(e)}")
                break
            before, after = stats(e), stats(f)
            changed = [s for s in preserved if getattr(before, s) != getattr(after, s)]
            if changed:
                failures.append(f"{format_word(e)} changes {','.join(changed)}")
                break
    return failures


def _check_closed_forms(nmax):
    failures = []
    for pair, tag in ORACLES.items():
        computed = avoidance_sequence(PatternSet.of(*pair), nmax).counts
        expected = tuple(oracle_value(tag, n) for n in range(1, nmax + 1))
        if computed != expected:
            failures.append(f"({','.join(pair)}) {tag}: {computed} != {expected}")
    return f"{len(ORACLES)} classes, n <= {nmax}", failures


def _check_distributions(nmax):
    failures = []
    t, z = triangle_T(nmax), z_triangle(nmax)
    for n in range(1, nmax + 1):
        stirling = {k: stirling2(n, k) for k in range(1, n + 1)}
        observed = {
            '011 zero': distribution(n, PatternSet.of('011'), 'zero'),
            '010,101 rep': distribution(n, PatternSet.of('010', '101'), 'rep'),
            '010,100 rep': distribution(n, PatternSet.of('010', '100'), 'rep'),
        }
        for label, histogram in observed.items():
            if histogram != stirling:
                failures.append(f"n={n} {label}: {histogram}")
        zeros = distribution(n, PatternSet.of('101', '110'), 'zero')
        t_row = {k: t[(n, k)] for k in range(1, n + 1) if t[(n, k)]}
        z_row = {k: z[n, k] for k in range(1, n + 1) if z[n, k]}
        if not zeros == t_row == z_row:
            failures.append(f"n={n} 101,110 zero: {zeros} / T {t_row} / z {z_row}")
    return f"Stirling and T rows, n <= {nmax}", failures


def _check_bijections(nmax):
    failures = []
    failures += _bijection_failures(nmax, ('010', '101'), ('010', '100'),
                                    *MAPS['phi_stat'], preserved=PRESERVED['phi_stat'])
    failures += _bijection_failures(nmax, ('011', '012'), ('010', '012'),
                                    *MAPS['zero_propagate'], preserved=PRESERVED['zero_propagate'])
    failures += _bijection_failures(nmax, ('010', '021'), ('011', '021'), *MAPS['first_occurrence_map'])
    failures += _bijection_failures(nmax, ('210',), ('201',),
                                    *MAPS['corteel_phi'], preserved=PRESERVED['corteel_phi'])
    failures += _bijection_failures(nmax, ('201',), ('210',), MAPS['psi'][0], preserved=PRESERVED['psi'])
    failures += _bijection_failures(nmax, ('100', '021'), ('110', '021'), *MAPS['cap_map'])
    corteel, _ = MAPS['corteel_phi']
    psi, _ = MAPS['psi']
    outline, outline_inverse = MAPS['outline']
    eta, eta_inverse = MAPS['eta']
    rho, rho_inv = MAPS['rho']
    for n in range(1, nmax + 1):
        for e in _domain(n, '210'):
            f = corteel(e)
            if sorted(f) != sorted(e):
                failures.append(f"corteel_phi changes the entries of {format_word(e)}")
            for kept in (Pattern.parse('011'), Pattern.parse('000')):
                if avoids_all(e, (kept,)) and not avoids_all(f, (kept,)):
                    failures.append(f"corteel_phi loses {kept}-avoidance on {format_word(e)}")
        for e in _domain(n, '201'):
            if contains_010(e) != contains_010(psi(e)):
                failures.append(f"psi changes 010-containment of {format_word(e)}")
        for e in _domain(n, '021'):
            path = outline(e)
            if not in_class_a(path) or outline_inverse(path) != e:
                failures.append(f"outline fails on {format_word(e)}")
        for e in _domain(n, '021', '120'):
            if not in_class_b(outline(e)):
                failures.append(f"outline of {format_word(e)} is not in class B")
        partitions = set(iter_set_partitions(n))
        images = set()
        for e in _domain(n, '011'):
            blocks = eta(e)
            images.add(blocks)
            if eta_inverse(blocks) != e or len(blocks) != stats(e).zero:
                failures.append(f"eta fails on {format_word(e)}")
        if images != partitions:
            failures.append(f"n={n}: eta does not reach every set partition")
        if n >= 2:
            source = [e for e in _domain(n, '011', '102') if stats(e).satu == 2]
            target = _domain(n - 1, '011', '102')
            if sorted(rho(e) for e in source) != sorted(target):
                failures.append(f"n={n}: rho is not onto I_{n - 1}(011,102)")
            if any(rho(rho_inv(f)) != f for f in target):
                failures.append(f"n={n}: rho_inv is not a right inverse")
    for n in range(nmax + 1):
        trees = list(iter_trees(n))
        paths = [tree_to_dyck(tree) for tree in trees]
        if set(paths) != set(iter_dyck_paths(n)) or len(set(paths)) != len(trees):
            failures.append(f"{n} edges: tree_to_dyck is not a bijection")
        for tree, heights in zip(trees, paths):
            if tree_type(tree) != path_type(heights) or tree_capacity(tree) != path_capacity(heights):
                failures.append(f"tree_to_dyck changes type or capacity of {format_tree(tree)}")
                break
    return f"every map on its domain, n <= {nmax}", failures


def _check_partitions(nmax):
    failures = []
    t = triangle_T(nmax)
    for n in range(1, nmax):
        ranks = Counter(max_block_rank(p) for p in iter_set_partitions(n + 1) if is_indecomposable(p))
        expected = {k: t[(n, k)] for k in range(1, n + 1) if t[(n, k)]}
        if dict(ranks) != expected:
            failures.append(f"n={n}: {dict(ranks)} != {expected}")
    for n in range(1, nmax + 1):
        if weighted_path_total(n) != oracle_value('A106228', n):
            failures.append(f"n={n}: weighted path total {weighted_path_total(n)}")
    return f"indecomposable partitions and weighted paths, n <= {nmax}", failures


def _check_series(order=20, residual_order=16):
    failures = []
    if gf('S_SYSTEM', order) != gf('GEN_SAVA', order):
        failures.append("S_SYSTEM differs from GEN_SAVA")
    for name, build in (('CLOSED_110_102', a_triangle), ('CLOSED_120_102', b_triangle)):
        coefficients = gf(name, order).coefficients[1:]
        totals = [total - 1 for total in build(order).totals()]
        if list(coefficients) != totals:
            failures.append(f"{name} differs from the triangle totals")
    if list(gf('GEN_SAVA', order).coefficients[1:]) != [formula_value('A279561', n) for n in range(1, order + 1)]:
        failures.append("GEN_SAVA differs from A279561")
    for eq_id in ('FUN_110_102', 'FUN_120_102', 'FUNC_011_201', 'EQ_SAV'):
        for u, v in RESIDUAL_POINTS:
            if not residual(eq_id, {'u': u, 'v': v}, residual_order).is_zero():
                failures.append(f"{eq_id} at u={u} v={v}")
    for eq_id in UNIVARIATE:
        if not residual(eq_id, order=residual_order).is_zero():
            failures.append(eq_id)
    return f"series identities to order {order}", failures


def _check_generating_tree(nmax):
    tree = gentree_counts(nmax)
    words = list(avoidance_sequence(PatternSet.of('100', '210', '120', '010'), nmax).counts)
    triple = list(avoidance_sequence(PatternSet.parse(triples='≠,≥,≥'), nmax).counts)
    failures = [] if tree == words == triple else [f"{tree} / {words} / {triple}"]
    return f"generating tree levels, n <= {nmax}", failures


VERIFY_CHECKS = {
    'closed-forms': _check_closed_forms,
    'distributions': _check_distributions,
    'bijections': _check_bijections,
    'partitions': _check_partitions,
    'generating-tree': _check_generating_tree,
}


class InvSeqLabApp:
    def __init__(self, verbose_mode=False, expected_path=None, workers=None):
        """
        Load configuration and apply the command-line overrides on top of it.

        :param verbose_mode: Enable verbose messages and debug timings for this session
        """
        ConfigManager.initialize()

        if verbose_mode:
            ConfigManager.set_verbose_mode(True)
        if expected_path:
            ConfigManager.set_config_value(expected_path, 'data', 'expected_values_path')
        if workers is not None:
            ConfigManager.set_config_value(workers, 'enumeration', 'workers')

    @property
    def expected_path(self):
        return ConfigManager.get_config_value('data', 'expected_values_path')

    @property
    def show_progress(self):
        return bool(ConfigManager.get_config_value('enumeration', 'show_progress'))

    def emit(self, lines, output=None):
        """Write result lines to the output file, or to stdout."""
        if output:
            with open(output, 'w', encoding='utf-8') as f:
                f.writelines(f"{line}\n" for line in lines)
            ConfigManager.console_print(f"Wrote {len(lines)} lines to {output}", verbose=True)
        else:
            for line in lines:
                print(line)

    def run(self, args) -> int:
        handler = getattr(self, f"cmd_{args.command}")
        return handler(args)

    def cmd_count(self, args) -> int:
        ps = PatternSet.parse(args.patterns or '', args.triple or ())
        settings = ConfigManager.get_config_section('enumeration')
        total = count_avoiders(args.n, ps,
                               workers=settings['workers'],
                               prefix_length=settings['prefix_length'],
                               parallel_threshold=settings['parallel_threshold'],
                               max_length=settings['max_length'])
        self.emit([str(total)], args.output)
        return EXIT_OK

    def cmd_sequence(self, args) -> int:
        ps = PatternSet.parse(args.patterns or '', args.triple or ())
        if args.source == 'oracle':
            tag = oracle_for(str(p) for p in ps.word_patterns)
            if tag is None or ps.triples:
                raise ValueError(f"No oracle for ({ps.label}); use --source bruteforce")
            counts = tuple(oracle_value(tag, n) for n in range(1, args.nmax + 1))
            provenance = PROVENANCE[oracle_kind(tag)]
        else:
            counts = avoidance_sequence(ps, args.nmax, ConfigManager.get_config_value(
                'enumeration', 'max_length')).counts
            provenance = 'bruteforce'

        if args.format == 'bfile':
            lines = [f"{n} {count}" for n, count in enumerate(counts, start=1)]
        elif args.format == 'csv':
            lines = ['n,count'] + [f"{n},{count}" for n, count in enumerate(counts, start=1)]
        else:
            document = {
                'pair': [str(p) for p in ps.word_patterns] + [str(t) for t in ps.triples],
                'counts': {str(n): count for n, count in enumerate(counts, start=1)},
                'provenance': provenance,
            }
            lines = json.dumps(document, indent=2, ensure_ascii=False).splitlines()
        self.emit(lines, args.output)
        return EXIT_OK

    def cmd_distribution(self, args) -> int:
        ps = PatternSet.parse(args.patterns or '', args.triple or ())
        names = [name.strip() for name in args.stat.split(',') if name.strip()]
        if len(names) == 1:
            histogram = distribution(args.n, ps, names[0])
            lines = [f"{value} {count}" for value, count in histogram.items()]
        else:
            histogram = joint_distribution(args.n, ps, names)
            lines = [f"{','.join(map(str, key))} {count}" for key, count in histogram.items()]
        self.emit([f"# {','.join(names)} over I_{args.n}({ps.label})"] + lines, args.output)
        return EXIT_OK

    def cmd_classify(self, args) -> int:
        classification = wilf_classify(args.nmax, show_progress=self.show_progress)
        labels = pair_labels(load_expected_values(self.expected_path))
        lines = []
        for group in classification.classes:
            names = sorted({labels.get(pair, '') for pair in group} - {''})
            members = ' '.join(f"({','.join(pair)})" for pair in group)
            lines.append(f"{classification.class_count(group)}\t{'/'.join(names) or '-'}\t{members}")
        self.emit(lines, args.output)
        ConfigManager.console_print(
            f"{len(classification.classes)} Wilf classes over {len(classification.pairs)} pairs "
            f"up to n={args.nmax}")
        return EXIT_OK

    def cmd_bijection(self, args) -> int:
        name = args.name.lower()
        if name not in MAPS:
            raise ValueError(f"Unknown map '{args.name}'. Known: {', '.join(MAPS)}")
        forward, backward = MAPS[name]
        if args.inverse:
            if backward is None:
                raise ValueError(f"{name} has no inverse procedure")
            if name == 'outline':
                source = parse_colored_path(args.input)
            elif name == 'eta':
                source = parse_partition(args.input)
            else:
                source = parse_word(args.input)
            image = backward(source)
            self.emit([format_word(image)], args.output)
            return EXIT_OK

        e = parse_word(args.input)
        image = forward(e)
        if name == 'outline':
            lines = [format_colored_path(image)]
        elif name == 'eta':
            lines = [format_partition(image), f"zero: {stats(e).zero} blocks: {len(image)}"]
        else:
            before, after = stats(e), stats(image)
            lines = [format_word(image)]
            lines += [f"{s}: {getattr(before, s)} -> {getattr(after, s)}" for s in PRESERVED.get(name, ())]
            if name == 'psi':
                lines.append(f"contains 010: {contains_010(e)} -> {contains_010(image)}")
        self.emit(lines, args.output)
        return EXIT_OK

    def cmd_triangle(self, args) -> int:
        name = args.name
        if name in TRIANGLES:
            triangle = TRIANGLES[name](args.nmax)
            if args.output:
                with open(args.output, 'w', newline='', encoding='utf-8') as f:
                    write_triangle_csv(triangle, f)
            else:
                write_triangle_csv(triangle, sys.stdout)
            return EXIT_OK
        builders = {'T': triangle_T, 'd': dyck_last}
        if name not in builders:
            raise ValueError(f"Unknown triangle '{name}'. Known: {', '.join(list(TRIANGLES) + list(builders))}")
        table = builders[name](args.nmax)
        lines = ['n,k,value'] + [f"{n},{k},{value}" for (n, k), value in table.items()]
        self.emit(lines, args.output)
        return EXIT_OK

    def cmd_gf(self, args) -> int:
        order = args.order or ConfigManager.get_config_value('series', 'default_order')
        params = (parse_fraction(args.u),) if args.u is not None else ()
        series = gf(args.name, order, params)
        self.emit(series.to_lines(), args.output)
        return EXIT_OK

    def cmd_residual(self, args) -> int:
        order = args.order or ConfigManager.get_config_value('series', 'residual_order')
        params = {
            'u': parse_fraction(args.u) if args.u is not None else None,
            'v': parse_fraction(args.v) if args.v is not None else None,
        }
        result = residual(args.eq, params, order)
        if result.is_zero():
            self.emit([f"{args.eq.upper()}: residual vanishes through x^{order}"], args.output)
            return EXIT_OK
        lines = [f"{args.eq.upper()}: nonzero residual"]
        lines += result.to_lines(nonzero_only=True)
        self.emit(lines, args.output)
        return EXIT_MISMATCH

    def cmd_report(self, args) -> int:
        rows = table_report(args.table, args.nmax, self.expected_path, self.show_progress)
        lines = []
        for row in rows:
            flags = [row.flag(n) for n in range(1, args.nmax + 1)]
            bad = [str(n) for n, flag in enumerate(flags, start=1) if flag == 'mismatch']
            status = f"MISMATCH at n={','.join(bad)}" if bad else 'ok'
            counts = ' '.join(map(str, row.computed))
            note = f"  [{row.note}]" if row.note else ''
            lines.append(f"({','.join(row.pair)})\t{row.label}\t{counts}\t{status}{note}")
        matched = sum(1 for row in rows if row.matches)
        lines.append(f"Table {args.table}: {matched}/{len(rows)} rows match")
        self.emit(lines, args.output)
        return EXIT_OK if matched == len(rows) else EXIT_MISMATCH

    def cmd_verify(self, args) -> int:
        lines = []
        ok = True
        checks = dict(VERIFY_CHECKS)
        checks['series'] = lambda nmax: _check_series()
        selected = args.check or list(checks)
        for name in selected:
            if name not in checks:
                raise ValueError(f"Unknown check '{name}'. Known: {', '.join(checks)}")
            ConfigManager.console_print(f"Running {name}...", verbose=True)
            scope, failures = checks[name](args.nmax)
            ok = ok and not failures
            lines.append(f"{'FAIL' if failures else 'PASS'} {name}: {scope}")
            lines += [f"    {failure}" for failure in failures[:20]]
        self.emit(lines, args.output)
        return EXIT_OK if ok else EXIT_MISMATCH

    def cmd_conjectures(self, args) -> int:
        checks = conjecture_report(args.nmax, self.show_progress)
        lines = []
        for check in checks:
            lines.append(f"{check.status:<22} {check.name}")
            lines += [f"    {label}: {' '.join(map(str, values))}" for label, values in check.values.items()]
        self.emit(lines, args.output)
        failed = [c for c in checks if c.status in ('MISMATCH', 'CONJECTURE-VIOLATED')]
        return EXIT_MISMATCH if failed else EXIT_OK

    def cmd_tree(self, args) -> int:
        tree = parse_tree(args.literal)
        heights = tree_to_dyck(tree)
        lines = [
            f"edges: {tree_edges(tree)}",
            f"type: {format_word(tree_type(tree))}",
            f"capacity: {tree_capacity(tree)}",
            f"dyck: {format_word(heights)}",
            f"dyck type: {format_word(path_type(heights))}",
            f"dyck capacity: {path_capacity(heights)}",
        ]
        self.emit(lines, args.output)
        return EXIT_OK


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog='invseq-lab',
        description='invseq-lab - pattern avoidance in inversion sequences',
        formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument(
        '-V', '--verbose',
        action='store_true',
        help='Enable verbose messages and per-run timings'
    )
    parser.add_argument('--expected', help='CSV of expected counts (overrides the bundled copy)')
    parser.add_argument('--workers', type=_positive_int, help='Worker processes for counting')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--output', help='Write the result to this file instead of stdout')

    patterns = argparse.ArgumentParser(add_help=False)
    patterns.add_argument('--patterns', help='Comma-separated patterns, e.g. 001,110')
    patterns.add_argument('--triple', action='append',
                          help='Relation triple such as "≥,≠,≥"; may be repeated')

    commands = parser.add_subparsers(dest='command', required=True)

    count = commands.add_parser('count', parents=[common, patterns], help='Count the avoiders of length n')
    count.add_argument('--n', type=int, required=True)

    sequence = commands.add_parser('sequence', parents=[common, patterns], help='Avoidance sequence for n = 1..nmax')
    sequence.add_argument('--nmax', type=_positive_int, required=True)
    sequence.add_argument('--format', choices=('bfile', 'csv', 'json'), default='bfile')
    sequence.add_argument('--source', choices=('bruteforce', 'oracle'), default='bruteforce')

    dist = commands.add_parser('distribution', parents=[common, patterns], help='Statistic histogram over a class')
    dist.add_argument('--n', type=int, required=True)
    dist.add_argument('--stat', required=True, help='Statistic name, or several comma-separated')

    classify = commands.add_parser('classify', parents=[common], help='Wilf classes of the 78 pattern pairs')
    classify.add_argument('--nmax', type=_positive_int, default=8)

    bijection = commands.add_parser('bijection', parents=[common], help='Apply a bijection to one input')
    bijection.add_argument('--name', required=True, help=', '.join(MAPS))
    bijection.add_argument('--input', required=True)
    bijection.add_argument('--inverse', action='store_true')

    triangle = commands.add_parser('triangle', parents=[common], help='Dump a counting triangle as CSV')
    triangle.add_argument('--name', required=True, help=', '.join(list(TRIANGLES) + ['T', 'd']))
    triangle.add_argument('--nmax', type=_positive_int, default=8)

    series = commands.add_parser('gf', parents=[common], help='Coefficients of a catalog series')
    series.add_argument('--name', required=True)
    series.add_argument('--order', type=_positive_int)
    series.add_argument('--u', help='Parameter of D_AT, e.g. 1/2')

    res = commands.add_parser('residual', parents=[common], help='Residual of a functional equation')
    res.add_argument('--eq', required=True)
    res.add_argument('--u')
    res.add_argument('--v')
    res.add_argument('--order', type=_positive_int)

    report = commands.add_parser('report', parents=[common], help='Compare a table against brute force')
    report.add_argument('--table', type=int, choices=(1, 2), required=True)
    report.add_argument('--nmax', type=_positive_int, default=8)

    verify = commands.add_parser('verify', parents=[common], help='Run the verification suite')
    verify.add_argument('--nmax', type=_positive_int, default=8)
    verify.add_argument('--check', action='append',
                        help=f"Run only this check ({', '.join(list(VERIFY_CHECKS) + ['series'])})")

    conjectures = commands.add_parser('conjectures', parents=[common], help='Conjecture monitors')
    conjectures.add_argument('--nmax', type=_positive_int, default=8)

    tree = commands.add_parser('tree', parents=[common], help='Map an ordered tree to its Dyck path')
    tree.add_argument('--literal', required=True, help='Nested parentheses, e.g. "(()(()))"')

    return parser


def parse_arguments(argv=None):
    """Parse command line arguments."""
    return build_parser().parse_args(argv)


def main(argv=None) -> int:
    args = parse_arguments(argv)
    app = InvSeqLabApp(verbose_mode=args.verbose, expected_path=args.expected, workers=args.workers)
    # Size and overflow failures are limits on --n: usage exit code, distinct messages.
    try:
        return app.run(args)
    except SizeTooLarge as e:
        print(f"error: {e}; raise enumeration.max_length in src/config.yaml to allow it", file=sys.stderr)
        return EXIT_USAGE
    except CountOverflow as e:
        print(f"error: count overflow, exact counts are limited to 64 bits: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
