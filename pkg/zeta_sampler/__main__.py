import sys

from zeta_sampler.cli import app

if __name__ == '__main__':
    sys.exit(app.run(sys.argv[1:]))
