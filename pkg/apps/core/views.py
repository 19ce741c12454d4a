from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import IsAuthenticated
from rest_framework.response import Response

from .conf import get_engine_settings


@api_view(['GET'])
@permission_classes([IsAuthenticated])
def engine_config(request):
    """
    Resolved engine settings
    Endpoint: /api/core/config/
    """
    return Response(get_engine_settings().as_dict())
