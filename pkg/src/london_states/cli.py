"""
Command line entry point.

Every subcommand builds one :class:`london_states.emitters.Document` and
writes it as CSV or JSON. Exit status: 0 success, 2 usage, 3 numeric
domain, 4 convergence.
"""
import argparse
import logging
import math
import sys
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from london_states import __version__
from london_states.bessel import weighted_closed_form, weighted_series, weighted_sum_identity_gap
from london_states.conf import settings
from london_states.dynamics import (
    DEFAULT_STEPS,
    DEFAULT_T_MAX,
    detect_revivals,
    inversion_trace,
)
from london_states.emitters import RENDERERS, Document
from london_states.exceptions import ConvergenceError, ImproperlyConfigured, NumericDomainError, UsageError
from london_states.phase_space import DEFAULT_SAMPLES, GridSpec, husimi_grid
from london_states.states import (
    Family,
    StateSpec,
    build,
    build_via_propagator,
    normalization_constants,
)
from london_states.statistics import photon_distribution, statistics_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_CONVERGENCE = 4

SUBCOMMANDS = ('state', 'stats', 'husimi', 'inversion', 'identity-check')
SWEEP_EPSILON = 1e-9


def parse_sweep(text):
    """
    ``lo:hi:step`` to the list ``lo, lo + step, ...`` up to ``hi`` inclusive.

    :raises: UsageError
    :rtype: list[float]
    """
    try:
        lo, hi, step = (float(part) for part in text.split(':'))
    except ValueError:
        raise UsageError('sweep must look like lo:hi:step, got %r' % (text,), parameter='sweep')
    if not all(math.isfinite(v) for v in (lo, hi, step)) or step <= 0 or hi < lo:
        raise UsageError('sweep needs finite lo <= hi and step > 0, got %r' % (text,), parameter='sweep')
    count = math.floor((hi - lo) / step + SWEEP_EPSILON)
    return [lo + k * step for k in range(count + 1)]


@dataclass
class RunConfig:
    subcommand: str
    x: Optional[float] = None
    theta: float = 0.0
    family: str = Family.MODIFIED.value
    dim: int = 0
    route: str = 'closed-form'
    sweep: Optional[List[float]] = None
    ys: List[float] = field(default_factory=list)
    half_width: Optional[float] = None
    samples: int = DEFAULT_SAMPLES
    coupling: float = 1.0
    t_max: float = DEFAULT_T_MAX
    steps: int = DEFAULT_STEPS
    window: Optional[int] = None
    tol: float = 1e-12
    format: str = 'csv'
    output: Optional[str] = None
    precision: int = 17

    @classmethod
    def from_args(cls, args):
        config = cls(
            subcommand=args.subcommand,
            x=getattr(args, 'x', None),
            theta=args.theta,
            family=args.family,
            dim=args.dim,
            route=getattr(args, 'route', 'closed-form'),
            sweep=parse_sweep(args.sweep) if getattr(args, 'sweep', None) else None,
            ys=list(getattr(args, 'y', None) or []),
            half_width=getattr(args, 'half_width', None),
            samples=getattr(args, 'samples', DEFAULT_SAMPLES),
            coupling=settings.COUPLING if getattr(args, 'coupling', None) is None else args.coupling,
            t_max=getattr(args, 't_max', DEFAULT_T_MAX),
            steps=getattr(args, 'steps', DEFAULT_STEPS),
            window=getattr(args, 'window', None),
            tol=args.tol if args.tol is not None else settings.PROPAGATE_TOL,
            format=args.format,
            output=args.output,
            precision=settings.PRECISION if args.precision is None else args.precision,
        )
        config.validate()
        return config

    def validate(self):
        """
        Check every parameter before any computation.

        :raises: UsageError, NumericDomainError
        """
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError('unknown subcommand %r' % (self.subcommand,), parameter='subcommand')
        if not 1 <= self.precision <= 17:
            raise UsageError('precision must be within 1..17, got %r' % (self.precision,), parameter='precision')
        if self.format not in RENDERERS:
            raise UsageError('format must be one of %s' % ', '.join(RENDERERS), parameter='format')
        if not (math.isfinite(self.tol) and self.tol > 0):
            raise UsageError('tol must be finite and > 0, got %r' % (self.tol,), parameter='tol')
        if self.subcommand == 'identity-check':
            if not self.ys:
                raise UsageError('identity-check needs at least one --y', parameter='y')
            for y in self.ys:
                if not (math.isfinite(y) and y > 0):
                    raise NumericDomainError('y must be finite and > 0, got %r' % (y,), parameter='y')
            return
        if self.sweep is None and self.x is None:
            raise UsageError('%s needs --x' % self.subcommand, parameter='x')
        if self.sweep is not None and self.subcommand != 'stats':
            raise UsageError('--sweep is only valid for stats', parameter='sweep')
        for x in self.amplitudes:
            self.spec(x)
        if self.subcommand == 'husimi':
            if self.half_width is not None:
                GridSpec.square(self.half_width, self.samples)
            elif self.samples < 2:
                raise UsageError('samples must be >= 2, got %r' % (self.samples,), parameter='samples')
        if self.subcommand == 'inversion':
            if not (math.isfinite(self.coupling) and self.coupling > 0):
                raise NumericDomainError('lambda must be finite and > 0', parameter='lambda')
            if not (math.isfinite(self.t_max) and self.t_max > 0):
                raise NumericDomainError('t-max must be finite and > 0', parameter='t-max')
            if self.steps < 2:
                raise UsageError('steps must be >= 2, got %r' % (self.steps,), parameter='steps')
            if self.window is not None and (self.window < 3 or self.window % 2 == 0 or self.window > self.steps):
                raise UsageError('window must be odd, >= 3 and <= steps, got %r' % (self.window,),
                                 parameter='window')

    @property
    def amplitudes(self):
        if self.subcommand == 'identity-check':
            return [0.5 * max(self.ys)]
        return self.sweep if self.sweep is not None else [self.x]

    def spec(self, x):
        return StateSpec(Family(self.family), x, self.theta, self.dim)

    def echo(self):
        echo = {
            'subcommand': self.subcommand,
            'family': self.family,
            'theta': self.theta,
            'dim': self.dim,
            'tol': self.tol,
        }
        if self.subcommand == 'identity-check':
            echo['y'] = list(self.ys)
        elif self.sweep is not None:
            echo['sweep'] = [self.sweep[0], self.sweep[-1], len(self.sweep)]
        else:
            echo['x'] = self.x
        if self.subcommand == 'state':
            echo['route'] = self.route
        if self.subcommand == 'husimi':
            echo['half_width'] = self.half_width
            echo['samples'] = self.samples
        if self.subcommand == 'inversion':
            echo.update(coupling=self.coupling, t_max=self.t_max, steps=self.steps, window=self.window)
        return echo


def diagnostics(spec):
    """
    Resolved truncation, tail mass and normalisation constants for the header.
    """
    v = build(spec)
    result = {'x': spec.amplitude, 'dim': spec.resolved_dim, 'tail_mass': v.truncation_loss,
              'renormalization': v.renormalization}
    if spec.amplitude > 0:
        constants = normalization_constants(spec.amplitude)
        result.update(
            normalization_series=constants.series,
            normalization_closed_form=constants.closed_form,
            normalization_unit_norm=constants.unit_norm,
        )
    else:
        result.update(normalization_series=None, normalization_closed_form=None, normalization_unit_norm=None)
    return result


def _state(config):
    spec = config.spec(config.x)
    v = build(spec) if config.route == 'closed-form' else build_via_propagator(spec, config.tol)
    p = photon_distribution(v)
    last = int(np.flatnonzero(p)[-1])
    rows = [[n, v[n].real, v[n].imag, p[n]] for n in range(last + 1)]
    return Document(columns=['n', 're_c', 'im_c', 'P'], rows=rows)


def _stats(config):
    rows = []
    for x in config.amplitudes:
        report = statistics_report(build(config.spec(x)))
        rows.append([x, report.mean, report.mandel_q, report.mandel_q_plus_one])
    return Document(columns=['x', 'mean', 'Q', 'Q_plus_one'], rows=rows)


def _husimi(config):
    v = build(config.spec(config.x))
    grid_spec = (GridSpec.default_for(v, config.samples) if config.half_width is None
                 else GridSpec.square(config.half_width, config.samples))
    grid = husimi_grid(v, grid_spec)
    xs, ys = grid.xs, grid.ys
    rows = [[xs[i], ys[j], grid.values[i, j]] for i in range(len(xs)) for j in range(len(ys))]
    peak = grid.argmax_alpha
    return Document(
        columns=['X', 'Y', 'Q'],
        rows=rows,
        meta={'husimi': {'argmax_X': peak.real, 'argmax_Y': peak.imag, 'Q_max': grid.max_value,
                         'mass': grid.mass()}},
    )


def _inversion(config):
    v = build(config.spec(config.x))
    trace = inversion_trace(photon_distribution(v), config.coupling, config.t_max, config.steps)
    report = detect_revivals(trace, config.window)
    rows = [[t, w] for t, w in zip(trace.times, trace.values)]
    return Document(
        columns=['t', 'W'],
        rows=rows,
        footer={'collapse_time': report.collapse_time, 'revival_times': list(report.revival_times)},
    )


def _identity_check(config):
    rows = []
    for y in config.ys:
        rows.append([y, weighted_series(y), weighted_closed_form(y), weighted_sum_identity_gap(y)])
    return Document(columns=['y', 'series', 'closed_form', 'gap'], rows=rows)


HANDLERS = {
    'state': _state,
    'stats': _stats,
    'husimi': _husimi,
    'inversion': _inversion,
    'identity-check': _identity_check,
}


def run(config):
    """
    Compute the document for a validated :class:`RunConfig`.

    :rtype: Document
    """
    document = HANDLERS[config.subcommand](config)
    meta = {
        'version': __version__,
        'config': config.echo(),
        'diagnostics': diagnostics(config.spec(max(config.amplitudes))),
    }
    meta.update(document.meta)
    document.meta = meta
    return document


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--family', choices=[f.value for f in Family], default=Family.MODIFIED.value)
    common.add_argument('--theta', type=float, default=0.0, help='phase in radians (default: 0)')
    common.add_argument('--dim', type=int, default=0, help='Fock space dimension, 0 for automatic (default: 0)')
    common.add_argument('--tol', type=float, default=None, help='propagator tolerance (default: 1e-12)')
    common.add_argument('--format', choices=sorted(RENDERERS), default='csv')
    common.add_argument('--output', '-o', default=None, help='output path (default: standard output)')
    common.add_argument('--precision', type=int, default=None,
                        help='significant digits (default: 17)')

    parser = argparse.ArgumentParser(
        prog='london-states',
        description='London and modified London coherent states: plot ready data.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('--verbose', '-v', action='store_true', help='log debug output on standard error')
    subparsers = parser.add_subparsers(dest='subcommand', required=True)

    state = subparsers.add_parser('state', parents=[common], help='number state coefficients')
    state.add_argument('--x', type=float, help='amplitude x >= 0')
    state.add_argument('--route', choices=['closed-form', 'propagator'], default='closed-form')

    stats = subparsers.add_parser('stats', parents=[common], help='mean photon number and Mandel Q')
    stats.add_argument('--x', type=float, help='amplitude x >= 0')
    stats.add_argument('--sweep', help='amplitude sweep lo:hi:step, endpoints inclusive')

    husimi = subparsers.add_parser('husimi', parents=[common], help='Husimi Q function grid')
    husimi.add_argument('--x', type=float, help='amplitude x >= 0')
    husimi.add_argument('--half-width', type=float, default=None,
                        help='grid half width (default: 3 + 2 sqrt(<n> + 1))')
    husimi.add_argument('--samples', type=int, default=DEFAULT_SAMPLES, help='samples per axis (default: 201)')

    inversion = subparsers.add_parser('inversion', parents=[common], help='Jaynes-Cummings atomic inversion')
    inversion.add_argument('--x', type=float, help='amplitude x >= 0')
    inversion.add_argument('--lambda', dest='coupling', type=float, default=None,
                           help='atom-field coupling (default: 1)')
    inversion.add_argument('--t-max', type=float, default=DEFAULT_T_MAX, help='trace length in 1/lambda')
    inversion.add_argument('--steps', type=int, default=DEFAULT_STEPS, help='number of samples')
    inversion.add_argument('--window', type=int, default=None, help='envelope window in samples (odd)')

    identity = subparsers.add_parser('identity-check', parents=[common],
                                     help='check the weighted Bessel sum identity')
    identity.add_argument('--y', type=float, action='append', help='argument y > 0, repeatable')
    return parser


def _report(err, prefix='error'):
    parameter = getattr(err, 'parameter', None)
    if parameter:
        print('%s: %s: %s' % (prefix, parameter, err), file=sys.stderr)
    else:
        print('%s: %s' % (prefix, err), file=sys.stderr)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
    )
    try:
        config = RunConfig.from_args(args)
        text = RENDERERS[config.format](run(config), config.precision)
    except (UsageError, ImproperlyConfigured) as err:
        _report(err, 'usage error')
        return EXIT_USAGE
    except NumericDomainError as err:
        _report(err)
        return EXIT_NUMERIC
    except ConvergenceError as err:
        _report(err, 'convergence error')
        return EXIT_CONVERGENCE

    if config.output:
        with open(config.output, 'w', encoding='utf-8', newline='') as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == '__main__':
    raise SystemExit(main())
