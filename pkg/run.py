"""
Main runner script for the motionshift HTTP API
"""

import os

from motionshift.app import app
from motionshift.utils.helpers import configure_logging

if __name__ == '__main__':
    configure_logging()
    port = int(os.environ.get('MOTIONSHIFT_PORT', 5000))
    print("=" * 60)
    print("Starting motionshift API...")
    print("=" * 60)
    print(f"API Base URL: http://localhost:{port}/api")
    print("Endpoints: /spectrum /shift /shift/analytic /fidelity /tables/<which> /health")
    print("=" * 60)
    print("\nPress CTRL+C to stop the server\n")

    app.run(host='0.0.0.0', port=port, debug=app.config['DEBUG'])
