import sys
import argparse

from spin_unruh import sweep, verify
from spin_unruh.sweep import FAMILIES, str2bool


class SmartFormatter(argparse.HelpFormatter):

    def _split_lines(self, text, width):
        if text.startswith('R|'):
            return text[2:].splitlines()
        # this is the RawTextHelpFormatter._split_lines
        return argparse.HelpFormatter._split_lines(self, text, width)


class UsageErrorParser(argparse.ArgumentParser):
    """
    ArgumentParser that exits with status 1 on a usage error, 2 is kept for failed verification
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f'{self.prog}: error: {message}\n')


def build_parser() -> argparse.ArgumentParser:
    parser = UsageErrorParser(prog='spin_unruh', formatter_class=SmartFormatter)
    subparsers = parser.add_subparsers(help='Available commands within spin_unruh currently', dest='unruh_function')

    sweep_help = 'R|Evaluate negativity, mutual information and Unruh occupancy of one state family over a grid of accelerations\n'
    sweep_help += 'example: sweep --family bell-phi+ --r-min 0 --r-max 0.7853981633974483 --steps 200 --format csv --out bell.csv'
    sweeper = subparsers.add_parser('sweep', help=sweep_help, formatter_class=SmartFormatter)
    sweeper.add_argument('--config', required=False, type=str, default=None,
                         help='optional, a key=value file with any of the options below (keys use underscores, ex: r_max=0.5), the command line wins on conflict')
    sweeper.add_argument('-f', '--family', required=False, type=str, default=None,
                         help=f'optional, the state family, one of {", ".join(FAMILIES)}, default is bell-phi+')
    sweeper.add_argument('-sp', '--spin-pair', required=False, type=str, default=None,
                         help="optional (only for the mode family), spins of Alice and Rob in the particle term, one of 'ud', 'du', 'uu', 'dd', default is ud")
    sweeper.add_argument('--r-min', required=False, type=float, default=None,
                         help='optional, first squeezing angle of the grid in radians, default is 0')
    sweeper.add_argument('--r-max', required=False, type=float, default=None,
                         help='optional, last squeezing angle of the grid in radians, at most pi/4, default is pi/4')
    sweeper.add_argument('-n', '--steps', required=False, type=int, default=None,
                         help='optional, number of grid points, at least 2, default is 50')
    sweeper.add_argument('--x-min', required=False, type=float, default=None,
                         help='optional, first value of omega*c/a, setting x-min and x-max replaces the r grid with an x grid')
    sweeper.add_argument('--x-max', required=False, type=float, default=None,
                         help='optional, last value of omega*c/a')
    sweeper.add_argument('--x-scale', required=False, type=str, default=None,
                         help="optional (only for an x grid), one of 'linear', 'log', default is linear")
    sweeper.add_argument('--phi', required=False, type=float, default=None,
                         help='optional, the Bogoliubov phase in radians, the observables do not depend on it, default is 0')
    sweeper.add_argument('--alpha', required=False, type=complex, default=None,
                         help='optional (only for the custom family), amplitude of |up,up>, a python complex literal like 0.5+0.1j')
    sweeper.add_argument('--beta', required=False, type=complex, default=None,
                         help='optional (only for the custom family), amplitude of |up,down>')
    sweeper.add_argument('--gamma', required=False, type=complex, default=None,
                         help='optional (only for the custom family), amplitude of |down,up>')
    sweeper.add_argument('--delta', required=False, type=complex, default=None,
                         help='optional (only for the custom family), amplitude of |down,down>')
    sweeper.add_argument('--erase-spin', required=False, type=str2bool, nargs='?', const=True, default=None,
                         help='optional (only for the custom family), evaluate the state after the total spin is traced out, default is False')
    sweeper.add_argument('--doublet-coherence', required=False, type=str2bool, nargs='?', const=True, default=None,
                         help='optional (only with spin erasure), compare (J, J_z) alone when erasing the total spin, keeping the coherence between the Rob and Alice doublets, default is False')
    sweeper.add_argument('--format', required=False, type=str, default=None,
                         help="optional, one of 'csv', 'json', default is csv")
    sweeper.add_argument('-o', '--out', required=False, type=str, default=None,
                         help='optional, path of the output file, default is sweep_<family>.<format> in the sweep_output directory')

    verify_help = 'R|Run every closed form against its numeric oracle and print the largest error of each\n'
    verify_help += 'example: verify --tolerance 1e-10'
    verifier = subparsers.add_parser('verify', help=verify_help, formatter_class=SmartFormatter)
    verifier.add_argument('-t', '--tolerance', required=False, type=float, default=None,
                          help='optional, largest allowed error, default is 1e-10')
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.unruh_function == 'sweep':
        try:
            output_path = sweep.main(args.config, family=args.family, spin_pair=args.spin_pair, r_min=args.r_min,
                                     r_max=args.r_max, steps=args.steps, x_min=args.x_min, x_max=args.x_max,
                                     x_scale=args.x_scale, phi=args.phi, output_format=args.format,
                                     output_path=args.out, alpha=args.alpha, beta=args.beta, gamma=args.gamma,
                                     delta=args.delta, erase_spin=args.erase_spin,
                                     doublet_coherence=args.doublet_coherence)
        except ValueError as e:
            print(f'spin_unruh sweep: error: {e}', file=sys.stderr)
            return 1
        print(output_path)
        return 0
    elif args.unruh_function == 'verify':
        return verify.main(args.tolerance)
    parser.print_help()
    return 1


if __name__ == "__main__":  # run from command line
    sys.exit(main())
