# this is used in setup.py, so don't pull in anything else
__version__ = '0.3.0'
