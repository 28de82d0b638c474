"""测试包。"""
