__title__ = 'condlgm'
__version__ = '0.3.0'
__author__ = 'The condlgm developers'
__author_email__ = ''
__description__ = ('Importance sampling and adaptive multiple importance '
                   'sampling over conditional latent Gaussian models')
__url__ = ''
__license__ = 'MIT'
