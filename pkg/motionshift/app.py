"""
Flask HTTP surface: the CLI commands as JSON (or CSV) endpoints
"""

import logging

from flask import Flask, Response, jsonify, request
from flask_cors import CORS

from . import __version__
from .cli import RunConfig, cmd_analytic, cmd_fidelity, cmd_shift, cmd_spectrum, cmd_table
from .config import config
from .data import DataProcessor, table_names
from .errors import ConfigError, MotionShiftError
from .utils.helpers import generate_response

logger = logging.getLogger(__name__)

# Create Flask app
app = Flask(__name__)
app.config['DEBUG'] = config.DEBUG
app.config['TESTING'] = config.TESTING
CORS(app)

API = config.API_PREFIX

FLOAT_FIELDS = ('eta', 'mass_u', 'wavelength_nm', 'omega_t_hz', 'omega_r_hz')
INT_FIELDS = ('n0', 'n_max')
TEXT_FIELDS = ('scheme', 'pulse', 'ramsey_t', 'grid', 'source', 'vary', 'etas')


def run_config_from_query(args, default_eta=None):
    """RunConfig from query parameters named like the CLI flags (underscored)"""
    options = {}
    for name in FLOAT_FIELDS + INT_FIELDS:
        value = args.get(name)
        if value is None:
            continue
        try:
            options[name] = int(value) if name in INT_FIELDS else float(value)
        except ValueError:
            raise ConfigError(name, f"{value!r} is not a number") from None
    for name in TEXT_FIELDS:
        if args.get(name) is not None:
            options[name] = args.get(name)
    if default_eta is not None and not {'eta', 'mass_u', 'wavelength_nm'} & options.keys():
        options['eta'] = default_eta
    return RunConfig(**options)


def _records(frame):
    return frame.astype(object).where(frame.notna(), None).to_dict('records')


def _respond(frame, message):
    if request.args.get('format') == 'csv':
        return Response(DataProcessor.to_csv(frame), mimetype='text/csv')
    body, status = generate_response(_records(frame), message)
    return jsonify(body), status


def _error(exc):
    if isinstance(exc, MotionShiftError):
        logger.info("rejected request %s: %s", request.path, exc)
        return jsonify({'error': str(exc)}), 400
    logger.exception("request %s failed", request.path)
    return jsonify({'error': str(exc)}), 500


# ==================== ROUTES ====================

@app.route(f'{API}/health', methods=['GET'])
def health():
    """Service status"""
    body, status = generate_response({'version': __version__, 'tables': table_names()}, 'ok')
    return jsonify(body), status


@app.route(f'{API}/spectrum', methods=['GET'])
def get_spectrum():
    """Excited-state spectrum over a detuning grid"""
    try:
        frame = cmd_spectrum(run_config_from_query(request.args))
        return _respond(frame, f'{len(frame)} detunings')
    except Exception as e:
        return _error(e)


@app.route(f'{API}/shift', methods=['GET'])
def get_shift():
    """Carrier shift curve"""
    try:
        frame = cmd_shift(run_config_from_query(request.args))
        return _respond(frame, f'{len(frame)} shift points')
    except Exception as e:
        return _error(e)


@app.route(f'{API}/shift/analytic', methods=['GET'])
def get_analytic_shift():
    """Closed-form shift estimates for one parameter point"""
    try:
        row = cmd_analytic(run_config_from_query(request.args))
        return _respond(DataProcessor.table_frame([row]), 'closed-form estimates')
    except Exception as e:
        return _error(e)


@app.route(f'{API}/fidelity', methods=['GET'])
def get_fidelity():
    """pi/2-pulse fidelity sweep over alpha"""
    try:
        frame = cmd_fidelity(run_config_from_query(request.args, default_eta=0.0))
        return _respond(frame, f'{len(frame)} alpha values')
    except Exception as e:
        return _error(e)


@app.route(f'{API}/tables/<which>', methods=['GET'])
def get_table(which):
    """Shift estimates for the built-in ions"""
    try:
        frame = cmd_table(which, request.args.get('eta_source', 'reference'))
        return _respond(frame, f'table {which}')
    except Exception as e:
        return _error(e)
