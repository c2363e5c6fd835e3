from ._base import *
from ._bdd import *
from ._csv import *
from ._json import *
from ._synth import *
