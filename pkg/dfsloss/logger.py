# +
"""
Logging for dfsloss.

Every module logs through `log`. The level of a logger is read from the
environment variable DFSLOSS_LOG_LEVEL when the logger is first used; it
accepts a number (e.g. "30") or a level name (e.g. "warning").
Constructions of DFS bases and two loss reports are logged at DEBUG,
finished runs at INFO and failed checks at WARNING.
"""
import logging
import os

ENV_VAR = 'DFSLOSS_LOG_LEVEL'
LEVELS = {'CRITICAL': logging.CRITICAL,
          'ERROR': logging.ERROR,
          'WARNING': logging.WARNING,
          'INFO': logging.INFO,
          'DEBUG': logging.DEBUG}
FORMAT = '%(asctime)s | %(levelname)-8s | %(name)s | %(module)s:%(funcName)s:%(lineno)s - %(message)s'

loggers: dict = {}


def level_from_env() -> int:
    """
    Level given by DFSLOSS_LOG_LEVEL (INFO when the variable is not set).

    Examples
    --------
    >>> import os
    >>> os.environ.pop(ENV_VAR, None) and None
    >>> level_from_env() == logging.INFO
    True
    """
    value = os.getenv(ENV_VAR)
    if value is None:
        return logging.INFO
    value = value.strip()
    if value.upper() in LEVELS:
        return LEVELS[value.upper()]
    if value.isdigit() and int(value) in LEVELS.values():
        return int(value)
    raise ValueError(f'{ENV_VAR}={value!r} is not a valid log level. Use one of {list(LEVELS)} or their values')


def get_logger(name: str = 'dfsloss') -> logging.Logger:
    if name not in loggers:
        _logger = logging.getLogger(name)
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(FORMAT))
        _logger.addHandler(handler)
        _logger.setLevel(level_from_env())
        loggers[name] = _logger
    return loggers[name]


def log(text, name: str = 'dfsloss', level: int = logging.INFO):
    """
    Logs given text to stderr.

    Parameters
    ----------
    text
        Text to log
    name
        The name of the logger
    level
        One of the levels of the logging library, default logging.INFO

    Examples
    --------
    >>> import os, logging
    >>> os.environ['DFSLOSS_LOG_LEVEL'] = 'warning' # doctest: +SKIP
    >>>
    >>> # not shown (INFO < WARNING)
    >>> log('dfs built', level=logging.INFO)  # doctest: +SKIP
    >>>
    >>> # shown
    >>> log('suite invariance: FAIL', level=logging.WARNING)  # doctest: +SKIP
    """
    if level not in LEVELS.values():
        raise ValueError(f'{level} is not a valid log level. See https://docs.python.org/3/library/logging.html')
    get_logger(name).log(level, text)
