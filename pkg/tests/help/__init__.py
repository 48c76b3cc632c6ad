"""
pytest module
"""
