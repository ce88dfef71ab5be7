# Пустой файл для создания пакета
