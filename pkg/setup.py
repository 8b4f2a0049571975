import setuptools
import os

here = os.path.abspath(os.path.dirname(__file__))
description = 'Decoherence-free subspaces of qudits and the loss of particles, simulated with numpy.'

# Import the README and use it as the long-description.
try:
    with open(os.path.join(here, 'README.md'), encoding='utf-8') as f:
        long_description = '\n' + f.read()
except FileNotFoundError:
    long_description = description


with open(os.path.join(here, "requirements.txt"), "r") as f:
    requirements = [line.strip() for line in f.readlines() if line.strip()]


# read the version without importing the package (numpy may not be installed yet)
version: dict = {}
with open(os.path.join(here, 'dfsloss', '_version.py'), encoding='utf-8') as f:
    exec(f.read(), version)


setuptools.setup(
    name="dfsloss",
    version=version['__version__'],
    license='The Unlicense',
    keywords=['quantum', 'decoherence-free subspace', 'particle loss', 'linear optics', 'quantum key distribution'],
    description=description,
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(),
    install_requires=requirements,
    package_data={"dfsloss": ["py.typed"]},
    entry_points={"console_scripts": ["dfsloss=dfsloss.cli:main"]},
    python_requires='>=3.8',
    classifiers=["Development Status :: 4 - Beta",
                 "Programming Language :: Python :: 3",
                 "Programming Language :: Python :: 3.8",
                 "Programming Language :: Python :: 3.9",
                 "Programming Language :: Python :: 3.10",
                 "Programming Language :: Python :: 3.11",
                 "License :: Public Domain",
                 "Intended Audience :: Science/Research",
                 "Topic :: Scientific/Engineering :: Physics",
                 "Operating System :: OS Independent"])
