from rest_framework import status
from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import IsAuthenticated
from rest_framework.response import Response

from apps.core.conf import get_engine_settings
from apps.core.exceptions import HypsysError, MustReduceError, ReducibleCaseError

from .families import family_polynomial, family_root


def _int_param(request, name, required=False):
    raw = request.query_params.get(name)
    if raw in (None, ''):
        if required:
            raise ValueError(f"'{name}' is required")
        return None
    return int(raw)


@api_view(['GET'])
@permission_classes([IsAuthenticated])
def family(request):
    """
    Closed-form polynomial and Perron root of a family member
    Endpoint: /api/polynomials/family/

    Query Parameters:
    - n: alphabet size (required)
    - k: start index on the central loop (default: K_n)
    - l: index of the gamma_{n,K_n,l} family (optional)
    """
    try:
        n = _int_param(request, 'n', required=True)
        k = _int_param(request, 'k')
        l = _int_param(request, 'l')
    except ValueError as e:
        return Response({'error': f'Invalid parameters: {str(e)}'}, status=status.HTTP_400_BAD_REQUEST)

    engine = get_engine_settings()
    payload = {'n': n, 'k': k, 'l': l}
    try:
        polynomial = family_polynomial(n, k, l)
        payload['coefficients'] = list(polynomial.coeffs)
        payload['polynomial'] = str(polynomial)
    except (MustReduceError, ReducibleCaseError) as e:
        payload['reduced_to'] = {key: value for key, value in e.context.items()}
    except HypsysError as e:
        return Response({'error': f'Family not available: {str(e)}'}, status=status.HTTP_400_BAD_REQUEST)

    try:
        payload['root'] = family_root(n, k, l, engine.display_width).as_dict()
    except HypsysError as e:
        return Response({'error': f'Root not available: {str(e)}'}, status=status.HTTP_400_BAD_REQUEST)
    return Response(payload)
