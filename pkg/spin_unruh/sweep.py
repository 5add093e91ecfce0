import os
import json
import logging
import argparse
import configparser
from dataclasses import dataclass, fields
from datetime import datetime
from typing import Optional

import dask
import numpy as np
import pandas as pd

from spin_unruh import sweep_variables
from spin_unruh.entanglement import BELL_KINDS, SPIN_PAIRS, StateParams, build_general_rho_ar, entanglement_report
from spin_unruh.rindler import SqueezingParams, squeezing_r
from spin_unruh.spintrace import maximally_entangled_occupation_state, occupation_rho, triplet_occupation_state
from spin_unruh.unruh import expected_number

FAMILIES = tuple(f'bell-{kind}' for kind in BELL_KINDS) + ('mode', 'occupation-singlet', 'occupation-triplet', 'custom')
CSV_COLUMNS = ('r', 'x', 'negativity', 'mutual_information', 'pt_min_eigenvalue', 'expected_number')
OUTPUT_FORMATS = ('csv', 'json')
X_SCALES = ('linear', 'log')


def str2bool(v):
    if isinstance(v, bool):
        return v
    if v.lower() in ('yes', 'true', 't', 'y', '1'):
        return True
    elif v.lower() in ('no', 'false', 'f', 'n', '0'):
        return False
    else:
        raise argparse.ArgumentTypeError('Boolean value expected.')


@dataclass(frozen=True)
class SweepConfig:
    """
    Everything needed to reproduce one sweep.  Either the r range or both x bounds set the grid, the x bounds win when
    given.
    """
    family: str = sweep_variables.default_family
    spin_pair: str = sweep_variables.default_spin_pair
    r_min: float = sweep_variables.r_min
    r_max: float = sweep_variables.r_max
    steps: int = sweep_variables.steps
    x_min: Optional[float] = None
    x_max: Optional[float] = None
    x_scale: str = sweep_variables.x_scale
    phi: float = sweep_variables.phi
    output_format: str = sweep_variables.output_format
    output_path: Optional[str] = None
    alpha: complex = 0j
    beta: complex = 0j
    gamma: complex = 0j
    delta: complex = 0j
    erase_spin: bool = False
    doublet_coherence: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f'SweepConfig: unknown family {self.family!r}, expected one of {FAMILIES}')
        if self.spin_pair not in SPIN_PAIRS:
            raise ValueError(f'SweepConfig: unknown spin pair {self.spin_pair!r}, expected one of {SPIN_PAIRS}')
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError(f'SweepConfig: steps={self.steps} must be an integer >= 2')
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f'SweepConfig: unknown output format {self.output_format!r}, expected one of {OUTPUT_FORMATS}')
        if self.x_scale not in X_SCALES:
            raise ValueError(f'SweepConfig: unknown x scale {self.x_scale!r}, expected one of {X_SCALES}')
        if self.uses_x_grid:
            if self.x_min is None or self.x_max is None:
                raise ValueError('SweepConfig: an x grid needs both x_min and x_max')
            if not (np.isfinite(self.x_min) and np.isfinite(self.x_max)):
                raise ValueError(f'SweepConfig: x range [{self.x_min}, {self.x_max}] must be finite')
            if not 0 < self.x_min <= self.x_max:
                raise ValueError(f'SweepConfig: x range [{self.x_min}, {self.x_max}] must satisfy 0 < x_min <= x_max')
        elif not 0.0 <= self.r_min <= self.r_max <= np.pi / 4 + 1e-15:
            raise ValueError(f'SweepConfig: r range [{self.r_min}, {self.r_max}] must lie within [0, pi/4]')
        if self.family == 'custom':
            self.state_params()

    @property
    def uses_x_grid(self) -> bool:
        return self.x_min is not None or self.x_max is not None

    def grid(self):
        """
        Grid points as (r, x) in emission order, x is None for an r grid
        """
        if self.uses_x_grid:
            if self.x_scale == 'log':
                xvals = np.geomspace(self.x_min, self.x_max, self.steps)
            else:
                xvals = np.linspace(self.x_min, self.x_max, self.steps)
            return [(squeezing_r(float(xv)), float(xv)) for xv in xvals]
        return [(float(rv), None) for rv in np.linspace(self.r_min, self.r_max, self.steps)]

    def state_params(self) -> StateParams:
        if self.family.startswith('bell-'):
            return StateParams.bell(self.family[len('bell-'):])
        elif self.family == 'mode':
            return StateParams.mode_entangled(self.spin_pair)
        elif self.family == 'occupation-singlet':
            return maximally_entangled_occupation_state()
        elif self.family == 'occupation-triplet':
            return triplet_occupation_state()
        return StateParams(alpha=self.alpha, beta=self.beta, gamma=self.gamma, delta=self.delta)

    @property
    def erases_spin(self) -> bool:
        return self.family.startswith('occupation-') or (self.family == 'custom' and self.erase_spin)


def evaluate_point(config: SweepConfig, r: float, x: Optional[float]) -> dict:
    """
    One row of the sweep.  Shares nothing with the other grid points.

    Parameters
    ----------
    config
        the sweep configuration
    r
        squeezing angle of this point
    x
        dimensionless omega * c / a of this point, None on an r grid

    Returns
    -------
    dict
        row keyed by CSV_COLUMNS
    """

    p = SqueezingParams(r, config.phi)
    params = config.state_params()
    if config.erases_spin:
        rho = occupation_rho(params, p, distinguish_doublets=not config.doublet_coherence)
    else:
        rho = build_general_rho_ar(params, p)
    report = entanglement_report(rho, r)
    return {'r': r, 'x': np.nan if x is None else x, 'negativity': report.negativity,
            'mutual_information': report.mutual_information, 'pt_min_eigenvalue': report.pt_min_eigenvalue,
            'expected_number': expected_number(p)}


def run_sweep(config: SweepConfig) -> pd.DataFrame:
    """
    Evaluate every grid point of the sweep with dask, the rows come back in grid order whatever order the points
    finish in.

    Parameters
    ----------
    config
        the sweep configuration

    Returns
    -------
    pd.DataFrame
        one row per grid point, columns CSV_COLUMNS
    """

    logger = logging.getLogger(sweep_variables.logger_name)
    points = config.grid()
    logger.log(logging.INFO, f'run_sweep: evaluating {len(points)} points of family {config.family} with the '
                             f'{sweep_variables.dask_scheduler} scheduler')
    tasks = [dask.delayed(evaluate_point)(config, r, x) for r, x in points]
    compute_kwargs = {'scheduler': sweep_variables.dask_scheduler}
    if sweep_variables.dask_number_of_workers:
        compute_kwargs['num_workers'] = sweep_variables.dask_number_of_workers
    rows = dask.compute(*tasks, **compute_kwargs)
    return pd.DataFrame(list(rows), columns=list(CSV_COLUMNS))


def write_sweep(data: pd.DataFrame, output_path: str, output_format: str = 'csv'):
    """
    Write the sweep, CSV with 17 significant digits and JSON with the shortest repr that reads back to the same float.
    Missing x is an empty CSV field or a JSON null.
    """
    if output_format == 'csv':
        data.to_csv(output_path, float_format=f'%.{sweep_variables.significant_digits}g', na_rep='', index=False,
                    columns=list(CSV_COLUMNS), lineterminator='\n')
    elif output_format == 'json':
        records = data.astype(object).where(data.notna(), None).to_dict(orient='records')
        with open(output_path, 'w') as jfile:
            json.dump([{col: rec[col] for col in CSV_COLUMNS} for rec in records], jfile, indent=2)
            jfile.write('\n')
    else:
        raise ValueError(f'write_sweep: unknown output format {output_format!r}, expected one of {OUTPUT_FORMATS}')


# config file key -> (SweepConfig field, converter), keys mirror the long command line flags
CONFIG_KEYS = {'family': ('family', str), 'spin_pair': ('spin_pair', str), 'r_min': ('r_min', float),
               'r_max': ('r_max', float), 'steps': ('steps', int), 'x_min': ('x_min', float),
               'x_max': ('x_max', float), 'x_scale': ('x_scale', str), 'phi': ('phi', float),
               'format': ('output_format', str), 'out': ('output_path', str), 'alpha': ('alpha', complex),
               'beta': ('beta', complex), 'gamma': ('gamma', complex), 'delta': ('delta', complex),
               'erase_spin': ('erase_spin', str2bool), 'doublet_coherence': ('doublet_coherence', str2bool)}


def read_config_file(config_path: str) -> dict:
    """
    Read a plain key=value config file, blank lines and # comments allowed

    Parameters
    ----------
    config_path
        path to the config file

    Returns
    -------
    dict
        SweepConfig field name -> converted value
    """

    if not os.path.exists(config_path):
        raise ValueError(f'read_config_file: {config_path} does not exist')
    with open(config_path, 'r') as cfile:
        text = cfile.read()
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string('[sweep]\n' + text, source=config_path)
    except configparser.Error as e:
        raise ValueError(f'read_config_file: unable to parse {config_path}: {e}')
    options = {}
    for key, value in parser['sweep'].items():
        if key not in CONFIG_KEYS:
            raise ValueError(f'read_config_file: unknown key {key!r} in {config_path}, expected one of {list(CONFIG_KEYS)}')
        fieldname, converter = CONFIG_KEYS[key]
        try:
            options[fieldname] = converter(value.strip())
        except (TypeError, ValueError, argparse.ArgumentTypeError) as e:
            raise ValueError(f'read_config_file: bad value {value!r} for {key!r}: {e}')
    return options


def build_config(config_path: str = None, **flags) -> SweepConfig:
    """
    Resolve the sweep configuration, sweep_variables defaults < config file < command line flags.  Flags left as None
    do not override.
    """
    valid = {fld.name for fld in fields(SweepConfig)}
    unknown = [key for key in flags if key not in valid]
    if unknown:
        raise ValueError(f'build_config: unknown options {unknown}')
    options = read_config_file(config_path) if config_path else {}
    options.update({key: val for key, val in flags.items() if val is not None})
    family = options.get('family', '')
    if family.startswith('mode-'):
        spin_pair = family[len('mode-'):]
        if options.get('spin_pair') not in (None, spin_pair):
            raise ValueError(f'build_config: family {family!r} conflicts with spin_pair {options["spin_pair"]!r}')
        options['family'], options['spin_pair'] = 'mode', spin_pair
    return SweepConfig(**options)


class ParameterSweep:
    """
    Runs one sweep from a resolved configuration and writes the table to disk, logging to the console and optionally
    to a logfile in sweep_variables.log_directory
    """

    def __init__(self, config: SweepConfig):
        self.config = config
        self.output_path = None
        self.logger = None

        self._validate_inputs()
        self._configure_logger()

    def _validate_inputs(self):
        """
        Resolve the output file, explicit path first, then the output directory from sweep_variables, then the
        default directory
        """

        if self.config.output_path:
            self.output_path = self.config.output_path
        else:
            if sweep_variables.output_directory:
                output_folder = sweep_variables.output_directory
            else:
                output_folder = sweep_variables.default_output_directory
            self.output_path = os.path.join(output_folder, f'sweep_{self.config.family}.{self.config.output_format}')
        output_folder = os.path.dirname(os.path.abspath(self.output_path))
        os.makedirs(output_folder, exist_ok=True)

    def _configure_logger(self):
        self.logger = configure_logger(sweep_variables.log_directory)

    def run(self) -> pd.DataFrame:
        data = run_sweep(self.config)
        write_sweep(data, self.output_path, self.config.output_format)
        self.logger.log(logging.INFO, f'ParameterSweep: wrote {len(data)} rows to {self.output_path}')
        return data


def configure_logger(log_directory: str = None) -> logging.Logger:
    """
    Configure the package logger to output to stdout and, if log_directory is set, to a timestamped logfile there
    """

    logging.basicConfig()
    logger = logging.getLogger(sweep_variables.logger_name)
    logger.setLevel(sweep_variables.logger_level)
    if log_directory:
        os.makedirs(log_directory, exist_ok=True)
        logfile = os.path.join(log_directory, f'logfile_{datetime.now().strftime("%Y%m%d_%H%M%S")}.txt')
        filelogger = logging.FileHandler(logfile)
        filelogger.setLevel(sweep_variables.logger_level)
        fmat = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        filelogger.setFormatter(logging.Formatter(fmat))
        logging.getLogger().addHandler(filelogger)
    return logger


def main(config_path: str = None, **flags) -> str:
    """
    Run a sweep and write its table

    Parameters
    ----------
    config_path
        optional key=value config file, its values are overridden by any flag that is not None
    flags
        SweepConfig field values from the command line

    Returns
    -------
    str
        path to the written table
    """

    sweep = ParameterSweep(build_config(config_path, **flags))
    sweep.run()
    return sweep.output_path
