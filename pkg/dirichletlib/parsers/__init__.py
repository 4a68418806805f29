from .function_config import FunctionConfig, load_function
from .grid import GridSpec, parse_grid, parse_complex
