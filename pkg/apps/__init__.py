# Domain apps package
# All domain-driven apps are organized here for better structure
