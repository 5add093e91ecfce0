VERSION = (0, 2, 0)
__version__ = '.'.join(map(str, VERSION))
