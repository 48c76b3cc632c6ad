"""
Root pytest module
"""
