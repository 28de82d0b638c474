"""命令行入口：bounds、oracle、verify、sweep、search、valence、jack、corpus。"""
