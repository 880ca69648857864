class ClassifierProvider:
    def __init__(self, name, params):
        self.name = name
        self.params = dict(params or {})

    def fit(self, train):
        """Trains on a FeatureMatrix."""
        raise NotImplementedError("This method should be implemented by subclasses.")

    def predict(self, rows):
        """Returns one class index per row."""
        raise NotImplementedError("This method should be implemented by subclasses.")

    def describe(self):
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({params})"
