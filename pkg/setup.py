import setuptools

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setuptools.setup(
    name="qautomata",
    version="0.1.0",
    author="Alexandre Pasquiou",
    author_email="alexandre.pasquiou@inria.fr",
    description="Exact and randomized equivalence, zeroness and minimisation of rational-weighted automata, reward automata and visibly pushdown automata",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    install_requires=["PyYAML", "numpy", "networkx", "joblib", "tqdm", "pytest"],
    package_dir={"": "src"},
    packages=setuptools.find_packages(where="src"),
    package_data={"qautomata": ["templates/*.yml"]},
    entry_points={"console_scripts": ["qautomata=qautomata.cli:main"]},
    python_requires=">=3.9",
)
