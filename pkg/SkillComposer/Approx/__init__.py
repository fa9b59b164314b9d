from .GradCheck import agreement, central_difference, relative_errors
from .Net import ACTIVATIONS, LayerSpec, Net, forward, grad
from .Optimizer import OptimizerState, sgd_step
from .ParamVector import ParamVector
from .Pooling import average_pool, pyramid, pyramid_size
