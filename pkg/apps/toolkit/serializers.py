"""
Схеми JSON-виводу підкоманд. Кожен payload проходить is_valid() перед записом;
ключі описані в README.
"""
from rest_framework import serializers


def pair():
    return serializers.ListField(child=serializers.FloatField(), min_length=2, max_length=2)


def floats(**kwargs):
    return serializers.ListField(child=serializers.FloatField(), **kwargs)


class EqSerializer(serializers.Serializer):
    set = serializers.CharField()
    bands = serializers.ListField(child=pair(), min_length=1)
    capacity = serializers.FloatField(min_value=0.0)
    log_capacity = serializers.FloatField()
    gap_zeros = floats()
    q_coeffs = floats(min_length=1)
    band_masses = floats(min_length=1)
    quad_points = serializers.IntegerField(min_value=1)
    x0 = serializers.FloatField(required=False, allow_null=True)
    h = serializers.FloatField(required=False, allow_null=True, min_value=0.0)


class GreenPointSerializer(serializers.Serializer):
    z = pair()
    g = serializers.FloatField(min_value=0.0)


class GreenSerializer(serializers.Serializer):
    set = serializers.CharField()
    points = GreenPointSerializer(many=True)


class CombGeometrySerializer(serializers.Serializer):
    u = floats(min_length=2)
    v = floats()
    eta0 = serializers.FloatField()
    x0 = serializers.FloatField()


class CombReportSerializer(serializers.Serializer):
    green_deviation = serializers.FloatField(min_value=0.0)
    imag_on_set = serializers.FloatField(min_value=0.0)
    tooth_base_deviation = serializers.FloatField(min_value=0.0)
    derivative_deviation = serializers.FloatField(min_value=0.0)
    sample_count = serializers.IntegerField(min_value=1)


class CombSerializer(CombGeometrySerializer):
    set = serializers.CharField()
    h = serializers.FloatField(min_value=0.0)
    identities = CombReportSerializer(required=False, allow_null=True)


class RemezRowSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=0)
    error = serializers.FloatField(min_value=0.0)
    levelled = serializers.FloatField(min_value=0.0)
    iterations = serializers.IntegerField(min_value=0)


class RemezSerializer(serializers.Serializer):
    set = serializers.CharField()
    x0 = serializers.FloatField()
    alpha = serializers.FloatField()
    rows = RemezRowSerializer(many=True)


class RateReportSerializer(serializers.Serializer):
    alpha = serializers.FloatField()
    x0 = serializers.FloatField()
    samples = serializers.ListField(child=pair(), min_length=1)
    extrapolated_limit = serializers.FloatField(min_value=0.0)
    limsup_estimate = serializers.FloatField(min_value=0.0)
    fit_residual = serializers.FloatField(min_value=0.0)
    extrapolated = serializers.BooleanField()


class VTSerializer(serializers.Serializer):
    lhs_limit = serializers.FloatField()
    rhs = serializers.FloatField()
    relative_gap = serializers.FloatField(min_value=0.0)
    h = serializers.FloatField(min_value=0.0)
    sigma = serializers.FloatField()
    lhs = RateReportSerializer()
    sigma_report = RateReportSerializer()


class RateSerializer(serializers.Serializer):
    set = serializers.CharField()
    rate = RateReportSerializer()
    vt = VTSerializer(required=False, allow_null=True)


class BigConstantSerializer(serializers.Serializer):
    value = serializers.CharField()
    log10 = serializers.FloatField()


class LedgerSerializer(serializers.Serializer):
    x0 = serializers.FloatField()
    h = serializers.FloatField(min_value=0.0)
    capacity = serializers.FloatField(min_value=0.0)
    c = serializers.FloatField(min_value=2.0)
    c1 = serializers.FloatField()
    c2 = serializers.FloatField()
    c3 = BigConstantSerializer()
    c4 = BigConstantSerializer()
    c5 = BigConstantSerializer()
    z0 = pair()
    w0_im = serializers.FloatField()
    R0 = serializers.FloatField(min_value=0.0)
    checks = serializers.DictField(child=serializers.BooleanField())


class VerifyPointSerializer(serializers.Serializer):
    set = serializers.CharField()
    x0 = serializers.FloatField()
    ok = serializers.BooleanField()
    index = serializers.IntegerField(required=False)
    error = serializers.CharField(required=False)
    ledger = LedgerSerializer(required=False)
    tooth = serializers.DictField(required=False)
    lemma22 = serializers.DictField(required=False)
    lemma23 = serializers.DictField(required=False)
    farfield = serializers.DictField(required=False)


class SuiteSerializer(serializers.Serializer):
    seed = serializers.IntegerField()
    trial_count = serializers.IntegerField(min_value=0)
    failed = serializers.ListField(child=serializers.IntegerField(min_value=0))
    ok = serializers.BooleanField()
    worst_margins = serializers.DictField(child=serializers.FloatField())
    trials = VerifyPointSerializer(many=True)


class ProfileRowSerializer(serializers.Serializer):
    level = serializers.IntegerField(min_value=0)
    m = serializers.IntegerField(min_value=1)
    h = serializers.FloatField(min_value=0.0)
    capacity = serializers.FloatField(min_value=0.0)


class ProfileSerializer(serializers.Serializer):
    rows = ProfileRowSerializer(many=True)
    h_nondecreasing = serializers.BooleanField()
    capacity_nonincreasing = serializers.BooleanField()


class DichotomyLevelSerializer(serializers.Serializer):
    level = serializers.IntegerField(min_value=0)
    m = serializers.IntegerField(min_value=1)
    h = serializers.FloatField(min_value=0.0)
    capacity = serializers.FloatField(min_value=0.0)
    rates = RateReportSerializer()
    sups = serializers.ListField(child=pair())
    sup_growth = serializers.BooleanField()
    h_over_bound = serializers.FloatField(allow_null=True)


class DichotomySerializer(serializers.Serializer):
    exhaustion = serializers.DictField()
    x0 = serializers.FloatField()
    alpha = serializers.FloatField()
    sigma = serializers.FloatField()
    beta = serializers.FloatField()
    h_bound = serializers.FloatField(allow_null=True)
    profile = ProfileSerializer()
    levels = DichotomyLevelSerializer(many=True)
