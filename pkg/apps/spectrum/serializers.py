from rest_framework import serializers

from .models import SpectrumEntry, SpectrumRun


class SpectrumEntrySerializer(serializers.ModelSerializer):
    n = serializers.IntegerField(source='run.n', read_only=True)
    genus = serializers.IntegerField(source='run.genus', read_only=True)
    stratum = serializers.CharField(source='run.stratum', read_only=True)
    representative = serializers.SerializerMethodField()

    class Meta:
        model = SpectrumEntry
        fields = ['id', 'run', 'n', 'genus', 'stratum', 'rank', 'coefficients',
                  'root', 'root_lo', 'root_hi', 'log_root', 'representative', 'digest']

    def get_representative(self, obj):
        return {'k': obj.k, 'word': obj.word}


class SpectrumRunSerializer(serializers.ModelSerializer):
    entries = SpectrumEntrySerializer(many=True, read_only=True)
    count = serializers.IntegerField(source='entries.count', read_only=True)

    class Meta:
        model = SpectrumRun
        fields = ['id', 'n', 'genus', 'stratum', 'bound', 'max_depth', 'complete',
                  'symmetric_only', 'nodes', 'pruned', 'emitted', 'elapsed', 'warnings',
                  'count', 'entries', 'created_at']
