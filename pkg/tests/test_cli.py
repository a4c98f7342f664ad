import numpy as np
import pytest

from motionshift.cli import RunConfig, join_grid_values, main, parse_grid
from motionshift.data import DataProcessor
from motionshift.errors import ConfigError


def run_to_frame(tmp_path, argv, name='out.csv'):
    path = tmp_path / name
    assert main(argv + ['--out', str(path)]) == 0
    return DataProcessor.read_csv(path)


class TestParseGrid:
    def test_values(self):
        np.testing.assert_allclose(parse_grid('-1:1:5'), [-1.0, -0.5, 0.0, 0.5, 1.0])

    @pytest.mark.parametrize('text', ['1:2', 'a:b:c', '1:0:5', '0:1:0'])
    def test_invalid(self, text):
        with pytest.raises(ConfigError) as excinfo:
            parse_grid(text)
        assert excinfo.value.field == 'grid'


class TestJoinGridValues:
    def test_negative_grid_joined(self):
        argv = ['spectrum', '--grid', '-300:300:5', '--eta', '0.05']
        assert join_grid_values(argv) == ['spectrum', '--grid=-300:300:5', '--eta', '0.05']

    def test_other_arguments_untouched(self):
        argv = ['spectrum', '--grid=0:1:2', '--eta', '0.05']
        assert join_grid_values(argv) == argv

    def test_dangling_flag_left_for_argparse(self):
        assert join_grid_values(['spectrum', '--grid']) == ['spectrum', '--grid']


class TestRunConfig:
    def test_eta_or_ion(self):
        with pytest.raises(ConfigError) as excinfo:
            RunConfig(omega_t_hz=1e4)
        assert excinfo.value.field == 'eta'
        with pytest.raises(ConfigError):
            RunConfig(eta=0.1, mass_u=40.0, wavelength_nm=729.0, omega_t_hz=1e4)

    def test_derives_eta_from_ion(self):
        run = RunConfig(mass_u=40.0, wavelength_nm=729.0, omega_t_hz=1e6, omega_r_hz=100.0)
        assert run.params().eta == pytest.approx(0.0969, abs=1e-3)

    def test_requires_trap_frequency(self):
        with pytest.raises(ConfigError) as excinfo:
            RunConfig(eta=0.1)
        assert excinfo.value.field == 'omega_t_hz'

    def test_ramsey_free_time_multiple(self):
        run = RunConfig(scheme='ramsey', eta=0.05, omega_t_hz=1e4, omega_r_hz=100.0, ramsey_t='multiple:3')
        params = run.params()
        schedule = run.schedule(params)
        assert schedule.tau == pytest.approx(params.pi_half_time)
        assert schedule.t_free == pytest.approx(3 * params.pi_half_time)

    def test_bad_pulse(self):
        run = RunConfig(eta=0.05, omega_t_hz=1e4, omega_r_hz=100.0, pulse='minutes:3')
        with pytest.raises(ConfigError) as excinfo:
            run.schedule(run.params())
        assert excinfo.value.field == 'pulse'


class TestSpectrumCommand:
    base = ['spectrum', '--omega-t-hz', '1e4', '--omega-r-hz', '100']

    def test_symmetric_without_recoil(self, tmp_path):
        frame = run_to_frame(tmp_path, self.base + ['--eta', '0', '--grid', '-300:300:61'])
        assert len(frame) == 61
        total = frame['p_e_total'].to_numpy()
        np.testing.assert_allclose(total, total[::-1], atol=1e-12)
        assert total[30] == pytest.approx(1.0, abs=1e-10)
        assert np.all(frame['p_e_blue'].abs() < 1e-20)

    def test_sidebands(self, tmp_path):
        frame = run_to_frame(
            tmp_path,
            ['spectrum', '--omega-t-hz', '1e4', '--omega-r-hz', '1e3', '--eta', '0.25', '--n0', '2',
             '--grid', '-30000:30000:13'],
        )
        assert frame.loc[8, 'delta_over_2pi_hz'] == pytest.approx(1e4)
        assert frame.loc[8, 'p_e_blue'] > 0.1
        assert frame.loc[4, 'p_e_red'] > 0.1
        assert frame.loc[6, 'p_e_blue'] < 0.01

    def test_deterministic_output(self, tmp_path):
        argv = self.base + ['--eta', '0.1', '--grid', '-200:200:9']
        run_to_frame(tmp_path, argv, 'first.csv')
        run_to_frame(tmp_path, argv, 'second.csv')
        assert (tmp_path / 'first.csv').read_bytes() == (tmp_path / 'second.csv').read_bytes()

    def test_negative_grid_with_separate_value(self, capsys):
        argv = ['spectrum', '--omega-t-hz', '1e4', '--omega-r-hz', '100', '--eta', '0.05', '--grid', '-300:300:5']
        assert main(argv) == 0
        lines = capsys.readouterr().out.strip().split('\n')
        assert len(lines) == 6
        assert float(lines[1].split(',')[0]) == -300.0

    def test_stdout_when_no_out(self, capsys):
        assert main(self.base + ['--eta', '0', '--grid', '0:0:1']) == 0
        assert capsys.readouterr().out.startswith('delta_over_2pi_hz,p_e_total')

    def test_error_exit(self, capsys):
        assert main(self.base + ['--eta', '0.1', '--grid', '1:0:5']) == 2
        assert 'grid' in capsys.readouterr().err


class TestShiftCommand:
    def test_no_recoil_no_shift(self, tmp_path):
        frame = run_to_frame(
            tmp_path,
            ['shift', '--eta', '0', '--omega-t-hz', '1e4', '--omega-r-hz', '100', '--grid', '0.002:0.008:3'],
        )
        assert list(frame.columns) == [
            'tau_s', 'delta_numeric_hz', 'delta_analytic_hz', 'bound_upper_hz', 'bound_lower_hz', 'delta_vrwa_hz',
        ]
        assert np.all(frame['delta_numeric_hz'].abs() < 1e-9)
        assert np.all(frame['delta_analytic_hz'] == 0.0)

    def test_ramsey_rabi_frequency_sweep_needs_multiple(self, capsys):
        argv = ['shift', '--scheme', 'ramsey', '--eta', '0.04', '--omega-t-hz', '2e6',
                '--ramsey-t', 'seconds:1e-4', '--grid', '2e4:4e4:2']
        assert main(argv) == 2
        assert 'ramsey_t' in capsys.readouterr().err

    def test_ramsey_rabi_frequency_sweep_rejects_pulse(self, capsys):
        argv = ['shift', '--scheme', 'ramsey', '--eta', '0.04', '--omega-t-hz', '2e6',
                '--ramsey-t', 'multiple:5', '--pulse', 'pi', '--grid', '2e4:4e4:2']
        assert main(argv) == 2
        assert 'pulse' in capsys.readouterr().err

    def test_ramsey_with_rabi_closed_form_fails(self, capsys):
        argv = ['shift', '--scheme', 'ramsey', '--vary', 't_free', '--source', 'sixstate_analytic',
                '--eta', '0.04', '--omega-t-hz', '2e6', '--omega-r-hz', '2e4', '--grid', '1e-5:2e-5:2']
        assert main(argv) == 2
        assert 'sixstate_analytic' in capsys.readouterr().err


class TestOtherCommands:
    def test_fidelity(self, tmp_path):
        frame = run_to_frame(
            tmp_path, ['fidelity', '--omega-t-hz', '1e4', '--grid', '0.1:0.3:3', '--etas', '0,0.1'],
        )
        np.testing.assert_allclose(frame['fidelity_eta_0'], 1.0, atol=1e-12)
        assert np.all(frame['fidelity_eta_0.1'] < 1.0)

    def test_table(self, tmp_path):
        frame = run_to_frame(tmp_path, ['table', 'clock'])
        assert list(frame['ion']) == ['40Ca+', '199Hg+', '88Sr+']
        assert frame.loc[0, 'eta_derived'] == pytest.approx(0.0969, abs=1e-3)

    def test_analytic(self, tmp_path):
        frame = run_to_frame(
            tmp_path, ['analytic', '--eta', '0.05', '--omega-t-hz', '1e4', '--omega-r-hz', '100'],
        )
        assert frame.loc[0, 'rabi_shift_pi_pulse_hz'] == pytest.approx(2.5e-7, rel=1e-9)
        assert frame.loc[0, 'bound_lower_hz'] == -frame.loc[0, 'bound_upper_hz']
