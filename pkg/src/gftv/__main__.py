"""python -m gftv 等价于 gftv 命令。"""

from gftv.cli.main import main

if __name__ == "__main__":
    main()
