import os

import pytest

from spin_unruh.__main__ import build_parser, main


def test_sweep_writes_table(tmp_path, capsys):
    output_path = str(tmp_path / 'bell.csv')
    assert main(['sweep', '-f', 'bell-phi+', '-n', '3', '--format', 'csv', '-o', output_path]) == 0
    assert capsys.readouterr().out.strip() == output_path
    assert os.path.exists(output_path)


def test_sweep_with_config_file(tmp_path):
    config_path = tmp_path / 'sweep.cfg'
    config_path.write_text('family = mode-dd\nsteps = 5\nformat = json\n')
    output_path = str(tmp_path / 'mode.json')
    assert main(['sweep', '--config', str(config_path), '--out', output_path]) == 0
    assert os.path.exists(output_path)


def test_sweep_flags_parse():
    args = build_parser().parse_args(['sweep', '--family', 'custom', '--beta', '0.5+0.1j', '--erase-spin',
                                      '--doublet-coherence', 'false', '--x-min', '0.1', '--x-max', '2'])
    assert args.beta == 0.5 + 0.1j
    assert args.erase_spin is True
    assert args.doublet_coherence is False
    assert args.x_min == 0.1
    assert args.steps is None


@pytest.mark.parametrize('argv', [['sweep', '--steps', '1'], ['sweep', '--family', 'bell-chi'],
                                  ['sweep', '--r-max', '2']])
def test_sweep_bad_values_exit_one(argv, tmp_path, capsys):
    assert main(argv + ['-o', str(tmp_path / 'out.csv')]) == 1
    assert 'error' in capsys.readouterr().err


def test_usage_error_exits_one():
    with pytest.raises(SystemExit) as exc:
        main(['sweep', '--no-such-flag'])
    assert exc.value.code == 1


def test_no_command_exits_one(capsys):
    assert main([]) == 1
    assert 'sweep' in capsys.readouterr().out


def test_verify_passes(capsys):
    assert main(['verify']) == 0
    out = capsys.readouterr().out
    assert 'vacuum_nullspace_solve' in out
    assert 'FAIL' not in out


def test_verify_failure_exits_two(capsys):
    assert main(['verify', '--tolerance', '-1']) == 2
    assert 'failing identities' in capsys.readouterr().out
