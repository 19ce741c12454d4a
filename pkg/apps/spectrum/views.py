from rest_framework import status, viewsets
from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import IsAuthenticated
from rest_framework.response import Response

from apps.core.conf import get_engine_settings
from apps.core.exceptions import HypsysError

from .census import systole
from .models import SpectrumEntry, SpectrumRun
from .search import SearchConfig
from .serializers import SpectrumEntrySerializer, SpectrumRunSerializer


def _filter_n(queryset, request, field):
    n = request.query_params.get('n')
    if n:
        queryset = queryset.filter(**{field: n})
    return queryset


class SpectrumRunViewSet(viewsets.ReadOnlyModelViewSet):
    """API endpoint for stored census runs"""
    queryset = SpectrumRun.objects.all().prefetch_related('entries')
    serializer_class = SpectrumRunSerializer
    permission_classes = [IsAuthenticated]

    def get_queryset(self):
        return _filter_n(super().get_queryset(), self.request, 'n')


class SpectrumEntryViewSet(viewsets.ReadOnlyModelViewSet):
    """API endpoint for stored spectrum entries"""
    queryset = SpectrumEntry.objects.select_related('run').all()
    serializer_class = SpectrumEntrySerializer
    permission_classes = [IsAuthenticated]

    def get_queryset(self):
        return _filter_n(super().get_queryset(), self.request, 'run__n')


@api_view(['GET'])
@permission_classes([IsAuthenticated])
def systole_view(request):
    """
    Least dilatation of the hyperelliptic component, searched on demand
    Endpoint: /api/spectrum/systole/

    Query Parameters:
    - n: alphabet size (required, n >= 4)
    """
    try:
        n = int(request.query_params.get('n', ''))
    except ValueError:
        return Response({'error': "'n' must be an integer"}, status=status.HTTP_400_BAD_REQUEST)

    engine = get_engine_settings()
    try:
        result = systole(n, SearchConfig.from_engine(n, engine, width=engine.display_width),
                         engine.precision_bits)
    except HypsysError as e:
        return Response({'error': f'Systole not available: {str(e)}'}, status=status.HTTP_400_BAD_REQUEST)

    return Response({
        'n': n,
        'complete': result.complete,
        'polynomial': str(result.polynomial),
        'predicted': result.predicted.as_dict(),
        'realizing_paths': result.realizing_paths,
        'entry': result.entry.as_dict(engine.display_width) if result.entry else None,
    })
