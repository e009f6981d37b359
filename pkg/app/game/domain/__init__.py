"""Game Domain Layer.

도메인 핵심 값을 타입 안전하게 표현하는 Enum 및 Entity 정의.
"""
