"""gftv：A_{p,n} 多叶解析函数近凸性、星形性判据的数值验证。"""

__version__ = "0.1.0"
