from Cython.Build import cythonize
from setuptools import find_packages, setup
from setuptools.extension import Extension
import pathlib

HERE = pathlib.Path(__file__).parent

README = (HERE / "README.md").read_text()

extensions = [
    Extension(
        name="SkillComposer.Approx.utils",
        sources=["SkillComposer/Approx/utils.pyx"])
]

extensions = cythonize(extensions)

setup(
    name="SkillComposer",
    version="0.1.0",
    description="learn kitchen skills in a randomized simulator and compose them with a symbolic planner",
    long_description=README,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3"
    ],
    python_requires=">=3.8",
    install_requires=["numpy", "pillow", "lz4", "pycryptodome", "PyYAML"],
    extras_require={"test": ["pytest"]},
    packages=find_packages(exclude=["tests", "tests.*"]),
    ext_modules=extensions,
    entry_points={"console_scripts": ["skill-composer=SkillComposer.Cli.Main:main"]},
)
