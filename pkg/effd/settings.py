"""
Django settings for the effd project.

Everything is read from environment variables, so one can just check out
the code, install requirements.txt and run ./manage.py commands.
"""

import os

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def envbool(s, default):
    v = os.getenv(s, default=default)
    if v not in ("", "True", "False"):
        msg = "Unexpected value %s=%s, use 'True' or 'False'" % (s, v)
        raise Exception(msg)
    return v == "True"


def envint(s, default):
    v = os.getenv(s, default)
    if v == "None":
        return None

    return int(v)


SECRET_KEY = os.getenv("SECRET_KEY", "---")
DEBUG = envbool("DEBUG", "False")
VERSION = ""
with open(os.path.join(BASE_DIR, "CHANGELOG.md"), encoding="utf-8") as f:
    for line in f.readlines():
        if line.startswith("## v"):
            VERSION = line.split()[1]
            break


INSTALLED_APPS = ("effd.cli",)

TEST_RUNNER = "effd.lib.tests.CustomRunner"

# No models live in this project. The test runner still wants a database,
# and SQLite needs no setup.
DEFAULT_AUTO_FIELD = "django.db.models.AutoField"
DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": os.getenv("DB_NAME", BASE_DIR + "/effd.sqlite"),
    }
}

USE_TZ = True
TIME_ZONE = "UTC"

# Default precision exponent M: enclosures have radius <= 2**-M
PREC_DEFAULT = envint("EFFD_PREC_DEFAULT", "40")

# Largest k accepted by the r_k = 1 - 1/k, M_k = k^2 - k Poisson schedule
SCHEDULE_CAP = envint("EFFD_SCHEDULE_CAP", "64")

# Largest k accepted by the M(k) = 2^(2^(k^2)) witness schedule.
# M(3) already has 155 decimal digits.
WEAK_SCHEDULE_CAP = envint("EFFD_WEAK_SCHEDULE_CAP", "2")

# Step budget for unbounded modulus searches, "None" for no budget
SEARCH_BUDGET = envint("EFFD_SEARCH_BUDGET", "100000")

# Radial grid points of the Dirichlet integral quadrature
QUADRATURE_RESOLUTION = envint("EFFD_QUADRATURE_RESOLUTION", "4096")

# Default number of E_N rows printed for coefficient streams
ENERGY_ROWS_DEFAULT = envint("EFFD_ENERGY_ROWS", "50")

OUTPUT_FORMAT = os.getenv("EFFD_OUTPUT_FORMAT", "json")

LOG_LEVEL = os.getenv("EFFD_LOG_LEVEL", "WARNING")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "plain"},
    },
    "loggers": {
        "effd": {"handlers": ["console"], "level": LOG_LEVEL},
    },
}

# Read additional configuration from effd/local_settings.py if it exists
if os.path.exists(os.path.join(BASE_DIR, "effd/local_settings.py")):
    from .local_settings import *
