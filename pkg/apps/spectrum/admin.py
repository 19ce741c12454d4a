from django.contrib import admin
from .models import SpectrumEntry, SpectrumRun


class SpectrumEntryInline(admin.TabularInline):
    model = SpectrumEntry
    extra = 0
    fields = ('rank', 'root', 'k', 'word', 'digest')
    readonly_fields = fields


@admin.register(SpectrumRun)
class SpectrumRunAdmin(admin.ModelAdmin):
    list_display = ('n', 'stratum', 'bound', 'complete', 'emitted', 'nodes', 'elapsed', 'created_at')
    search_fields = ('stratum',)
    list_filter = ('n', 'complete', 'symmetric_only')
    date_hierarchy = 'created_at'
    readonly_fields = ('created_at',)
    inlines = [SpectrumEntryInline]
    fieldsets = (
        ('Census', {
            'fields': ('n', 'genus', 'stratum', 'bound', 'max_depth')
        }),
        ('Outcome', {
            'fields': ('complete', 'symmetric_only', 'warnings')
        }),
        ('Search statistics', {
            'fields': ('nodes', 'pruned', 'emitted', 'elapsed', 'created_at')
        }),
    )


@admin.register(SpectrumEntry)
class SpectrumEntryAdmin(admin.ModelAdmin):
    list_display = ('run', 'rank', 'root', 'log_root', 'k', 'word')
    search_fields = ('word', 'digest', 'root')
    list_filter = ('run__n', 'k')

    def has_add_permission(self, request):
        # Entries only come from census runs
        return False
