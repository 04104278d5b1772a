from setuptools import setup, find_packages

setup(
    name = 'PyKantorovich',
    version = '0.1.0',
    author = 'PyKantorovich contributors',
    description = 'Numerical lab for Kantorovich-type Jakimovski-Leviatan operators',
    license = 'MIT',
    keywords = 'python approximation theory positive linear operators kantorovich appell',
    packages = [pkg for pkg in find_packages() if not pkg.startswith("tests")],
    install_requires = ['numpy', 'scipy'],
    entry_points = {
        'console_scripts': ['pykantorovich = pykantorovich.api.cli:main'],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "License :: OSI Approved :: MIT License",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    )
