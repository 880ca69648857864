import json

from jamscope.util.errors import UnknownCaseError
from .providers.knn import KNNClassifierProvider
from .providers.forest import ForestClassifierProvider

# the twelve same/different/norm cases; "highspeed" is run on request
DEFAULT_GROUPS = ("same", "different", "norm")


def _load_registry(filename):
    import pkg_resources
    path = pkg_resources.resource_filename('jamscope.models', filename)
    with open(path, "r") as f:
        return json.load(f)


def get_classifier_list():
    """Returns a list of available classifiers."""
    return _load_registry('classifiers.json')


def get_classifier_dict(id):
    classifier_dict = {c['id']: c for c in get_classifier_list()}
    if id not in classifier_dict:
        raise ValueError(f"Classifier {id} not found")
    return classifier_dict[id]


def get_classifier(id, **overrides):
    """Returns a ClassifierProvider instance for the given classifier id."""
    classifier = get_classifier_dict(id)
    params = dict(classifier['params'])
    params.update({k: v for k, v in overrides.items() if v is not None})

    if classifier['provider'] == "knn":
        return KNNClassifierProvider(classifier['name'], params)
    if classifier['provider'] == "forest":
        return ForestClassifierProvider(classifier['name'], params)
    raise ValueError(f"Unknown provider {classifier['provider']} for classifier {id}")


def get_case_list():
    """Returns the experiment case registry."""
    return _load_registry('cases.json')


def get_case_dict(name):
    case_dict = {c['name']: c for c in get_case_list()}
    if name not in case_dict:
        raise UnknownCaseError(f"Case {name} not found")
    return case_dict[name]


def resolve_case_names(selector):
    """Expands `all`, `everything` or a group name into case names; single names pass through."""
    cases = get_case_list()
    groups = {c['group'] for c in cases}
    if selector == "all":
        return [c['name'] for c in cases if c['group'] in DEFAULT_GROUPS]
    if selector == "everything":
        return [c['name'] for c in cases]
    if selector in groups:
        return [c['name'] for c in cases if c['group'] == selector]
    if selector == "high":
        return [c['name'] for c in cases if c['group'] == "highspeed"]
    get_case_dict(selector)
    return [selector]
