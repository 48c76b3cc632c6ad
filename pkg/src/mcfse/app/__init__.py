# -*- encoding: utf-8 -*-
"""
mcfse.app package

Experiment harness: synthetic test material, runner and reports.
"""
