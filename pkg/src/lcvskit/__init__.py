from lcvskit._core import *
from lcvskit._geometry import *
from lcvskit._lcvs import *

__version__ = "0.1.0"
