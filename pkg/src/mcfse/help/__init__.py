# -*- encoding: utf-8 -*-
"""
mcfse.help package

"""

# Setup module global ogler as package logger factory. This must be done on
# import so all modules in package have access to loggers via
# help.ogler.getLogger().
# May always change level and reopen log file if need be.

from . import ogling

# initialize global ogler at mcfse.help.ogler always instantiated by default
ogler = ogling.initOgler(prefix='mcfse')  # init only runs once on import

from .kvicting import Kvict
from .timing import MonoTimer
from .helping import dump, load, writeAtomic
