from ._methods import *
from ._matrix import *
from ._experiment import *
