"""Python bindings for the cooperative OAM wireless (COW) simulation core."""

try:
    from cowsim._cowsim import *  # noqa: F401,F403
    from cowsim._cowsim import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension sits next to the package
    from _cowsim import *  # noqa: F401,F403
    from _cowsim import __version__  # noqa: F401
