import logging

from django.test.runner import DiscoverRunner


class CustomRunner(DiscoverRunner):
    def __init__(self, *args, **kwargs):
        # Keep the test output free of debug and info records
        logging.disable(logging.INFO)

        super(CustomRunner, self).__init__(*args, **kwargs)
