import math

from zeta_sampler.blueprints import Blueprint
from zeta_sampler.config import Config
from zeta_sampler.decomposition import (
    VARIANTS, band_sums, compute_decomposition, diagonal_F_sum, diagonal_G_sum,
    tail_windows)
from zeta_sampler.exceptions import InvalidUsage
from zeta_sampler.response import EXIT_FAILURE, EXIT_OK, csv, json

decompose = Blueprint('decompose')

BAND_COLUMNS = ('t', 'delta', 'variant', 'S5_re', 'S5_im', 'S1_re', 'S1_im',
                'S2_re', 'S2_im', 'terms', 's5_ratio', 's12_ratio', 'pass')


def _variants(variant):
    return tuple(VARIANTS) if variant == 'both' else (variant,)


def _band_row(report):
    return {
        't': report.t, 'delta': report.delta, 'variant': report.variant,
        'S5_re': report.S5.re, 'S5_im': report.S5.im,
        'S1_re': report.S1.re, 'S1_im': report.S1.im,
        'S2_re': report.S2.re, 'S2_im': report.S2.im,
        'terms': report.terms, 's5_ratio': report.s5_ratio,
        's12_ratio': report.s12_ratio, 'pass': report.passed,
    }


def diagonal_report(t):
    F = complex(diagonal_F_sum(t))
    G = complex(diagonal_G_sum(t))
    residual = F - G - math.log(t)
    return {'t': t, 'F': F, 'G': G, 'residual': residual,
            'pass': abs(residual) <= Config.DIAGONAL_CEILING}


@decompose.command('decompose', '--t:number=', '--tol:number=1e-8',
                   '--delta:number=1', '--variant:half-square|as-printed|both=both',
                   '--samples:int=10000', '--tail:flag', '--t-list:numbers=',
                   help='intermediate objects of the second-moment proof')
def run_decompose(invocation, t, tol, delta, variant, samples, tail, t_list):
    """
    JSON：A1/A2/A3 分解（10 <= t <= 1000）、对角线恒等式、带状和（t >= 16）。
    给出 --t-list 时改为输出带状和网格的 CSV
    """
    variants = _variants(variant)
    if t is None and not t_list:
        raise InvalidUsage('decompose needs --t or --t-list')
    if t_list:
        reports = [band_sums(value, delta, name, invocation.workers)
                   for value in t_list for name in variants]
        status = EXIT_OK if all(r.passed for r in reports) else EXIT_FAILURE
        return csv([_band_row(r) for r in reports], BAND_COLUMNS,
                   invocation.config, status=status)

    body = {'t': t}
    failed = []
    if 10 <= t <= 1000:
        body['decomposition'] = report = compute_decomposition(
            t, tol, samples, invocation.seed, invocation.workers)
        if not report.passed:
            failed.append('decomposition')
    if 1 <= t <= 1e6:
        body['diagonal'] = diagonal = diagonal_report(t)
        if not diagonal['pass']:
            failed.append('diagonal')
    if 16 <= t <= 1e6:
        body['band_sums'] = reports = [
            band_sums(t, delta, name, invocation.workers) for name in variants]
        failed.extend('band-sums:{}'.format(r.variant)
                      for r in reports if not r.passed)
    if tail:
        body['tail_windows'] = tail_windows(t)
    body['failed'] = failed
    body['pass'] = not failed
    return json(body, invocation.config,
                status=EXIT_FAILURE if failed else EXIT_OK)
