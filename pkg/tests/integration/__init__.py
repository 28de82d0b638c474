"""集成测试。"""
