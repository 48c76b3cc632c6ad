# -*- encoding: utf-8 -*-
"""
mcfse.base Package
"""

from .tyming import Tymist, Tymee, Tymer
from .doing import Doist, Doer
from .filing import openFiler, Filer
