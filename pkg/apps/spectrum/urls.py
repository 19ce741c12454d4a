from django.urls import path, include
from rest_framework.routers import DefaultRouter
from . import views

router = DefaultRouter()
router.register(r'runs', views.SpectrumRunViewSet, basename='spectrumrun')
router.register(r'entries', views.SpectrumEntryViewSet, basename='spectrumentry')

urlpatterns = [
    path('systole/', views.systole_view, name='spectrum-systole'),
    path('', include(router.urls)),
]
