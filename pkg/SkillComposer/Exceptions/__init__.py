from .Exceptions import *
