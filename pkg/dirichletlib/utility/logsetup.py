import logging

LOG_FORMAT = "[%(asctime)s] [%(module)-14.14s] [%(levelname)-5.5s] %(message)s"


class ScriptLog(object):
    """
    Root logger setup for scripts and the command line

    Installs a console handler at ``consolelevel`` and, when ``logfile`` is given,
    a file handler that records everything at DEBUG.

    :param logfile: log file path (optional)
    :param consolelevel: level of the console handler (optional, default: logging.WARNING)
    """

    def __init__(self, logfile=None, consolelevel=logging.WARNING):
        logFormatter = logging.Formatter(LOG_FORMAT)
        self.log = logging.getLogger()
        self.fileHandler = None

        if logfile is not None:
            self.fileHandler = logging.FileHandler(logfile)
            self.fileHandler.setFormatter(logFormatter)
            self.fileHandler.setLevel(logging.DEBUG)
            self.log.addHandler(self.fileHandler)
        self.log.setLevel(logging.DEBUG)

        self.consoleHandler = logging.StreamHandler()
        self.consoleHandler.setFormatter(logFormatter)
        self.consoleHandler.setLevel(consolelevel)
        self.log.addHandler(self.consoleHandler)

    def close(self):
        for handler in (self.fileHandler, self.consoleHandler):
            if handler is not None:
                self.log.removeHandler(handler)
                handler.close()


def verbosity_level(count):
    """
    Console level for a -v count: 0 warnings, 1 info, 2 or more debug
    """
    if count >= 2:
        return logging.DEBUG
    if count == 1:
        return logging.INFO
    return logging.WARNING
