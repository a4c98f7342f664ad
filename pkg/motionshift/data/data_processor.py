"""
Data Processing Utilities: result frames and CSV emission
"""

import io
import logging

import numpy as np
import pandas as pd

from ..config import config
from ..utils.helpers import angular_to_hz

logger = logging.getLogger(__name__)


class DataProcessor:
    """Turns model results into pandas frames and CSV text"""

    @staticmethod
    def spectrum_frame(points):
        """One row per SpectrumPoint; p_e_rest is the excited population outside n0-1..n0+1"""
        rows = []
        for point in points:
            rows.append({
                'delta_over_2pi_hz': angular_to_hz(point.delta),
                'p_e_total': point.p_e_total,
                'p_e_red': point.p_red,
                'p_e_carrier': point.p_carrier,
                'p_e_blue': point.p_blue,
                'p_e_rest': point.p_e_total - point.p_six_state,
            })
        return pd.DataFrame(rows, columns=[
            'delta_over_2pi_hz', 'p_e_total', 'p_e_red', 'p_e_carrier', 'p_e_blue', 'p_e_rest',
        ])

    @staticmethod
    def shift_frame(curve, x_column='tau_s', x_transform=None):
        """Shift curve points to a frame; frequencies in Hz, VRWA column only when computed"""
        rows = []
        for point in curve:
            x = point.x if x_transform is None else x_transform(point.x)
            row = {
                x_column: x,
                'delta_numeric_hz': point.result.delta_hz,
                'delta_analytic_hz': angular_to_hz(point.analytic),
                'bound_upper_hz': angular_to_hz(point.upper),
                'bound_lower_hz': angular_to_hz(point.lower),
            }
            if point.vrwa is not None:
                row['delta_vrwa_hz'] = angular_to_hz(point.vrwa)
            rows.append(row)
        return pd.DataFrame(rows)

    @staticmethod
    def fidelity_markers(alphas):
        """Values 1/(4n+1) inside the alpha range (maxima of sin(pi / (2 alpha)))"""
        alphas = np.asarray(alphas, dtype=float)
        lo, hi = alphas.min(), alphas.max()
        n_max = int(np.floor((1.0 / lo - 1.0) / 4.0))
        markers = [1.0 / (4 * n + 1) for n in range(n_max + 1)]
        return [m for m in markers if lo <= m <= hi]

    @staticmethod
    def fidelity_frame(alphas, series):
        """
        ``series`` maps eta to fidelity values over ``alphas``.

        The marker column holds 1/(4n+1) on the grid row nearest to each marker.
        """
        alphas = np.asarray(alphas, dtype=float)
        frame = pd.DataFrame({'alpha': alphas})
        for eta, values in series.items():
            frame[f'fidelity_eta_{eta:g}'] = np.asarray(values, dtype=float)
        marker = np.full(len(alphas), np.nan)
        for value in DataProcessor.fidelity_markers(alphas):
            marker[int(np.argmin(np.abs(alphas - value)))] = value
        frame['marker'] = marker
        return frame

    @staticmethod
    def table_frame(rows):
        return pd.DataFrame(rows)

    @staticmethod
    def to_csv(frame, path=None):
        """
        UTF-8, comma separated, LF line endings, 17 significant digits.

        Returns the CSV text when ``path`` is None.
        """
        options = dict(index=False, float_format=config.CSV_FLOAT_FORMAT, lineterminator='\n')
        if path is None:
            buffer = io.StringIO()
            frame.to_csv(buffer, **options)
            return buffer.getvalue()
        frame.to_csv(path, encoding='utf-8', **options)
        logger.info("wrote %d rows to %s", len(frame), path)
        return None

    @staticmethod
    def read_csv(path_or_buffer):
        return pd.read_csv(path_or_buffer, float_precision='round_trip')
