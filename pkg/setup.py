from setuptools import setup

setup(name='expo-tools',
      version='1.0.0',
      description='Country-level exposure analysis of traceroute and BGP paths',
      packages=['expo_tools'],
      scripts=['expo'],
      python_requires='>=3.6',
      install_requires=['networkx', 'numpy', 'scipy', 'py-radix'],
      extras_require={'test': ['pytest']})
