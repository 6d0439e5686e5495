from setuptools import find_packages, setup


setup(
    name='hyperrcd',
    packages=find_packages(exclude=["*.tests"]),
    install_requires=[
        "numpy",
        "pandas",
        "scikit_learn",
        "scipy",
        "tqdm",
        "joblib",
        "absl-py",
        "POT",
        "networkx",
        "pydot",
    ],
    extras_require={"test": ["pytest"]},
    entry_points={
        "console_scripts": ["hyperrcd = hyperrcd.cli:entry_point"],
    },
)
