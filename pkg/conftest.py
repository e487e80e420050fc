import os

# The library expects mpmath's pure-Python backend (plain int mantissas);
# with gmpy2 installed, mpz values would leak into Fractions and JSON output.
os.environ.setdefault("MPMATH_NOGMPY", "1")
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "effd.settings")

import django

django.setup()
